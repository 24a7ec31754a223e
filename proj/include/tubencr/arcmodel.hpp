#pragma once

// Marked surfaces cut by arcs, encoded as ribbon-graph data, and the quiver
// presentation read off from boundary chords and faces.
//
// Boundary cycles list arc-ends ("L0+", "L0-") and stops (any other symbol)
// in cyclic order. A face is a cyclic list alternating arc names and boundary
// segments "X>Y" running from arc-end X to arc-end Y.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tubencr/quivalg.hpp"

namespace tubencr {

struct Face {
    std::vector<std::string> cycle;
    std::optional<int> mark;
};

class MarkedSurface {
public:
    MarkedSurface(std::vector<std::vector<std::string>> boundaries, std::vector<Face> faces);

    const std::vector<std::vector<std::string>>& boundaries() const { return boundaries_; }
    const std::vector<Face>& faces() const { return faces_; }
    /// Arc names in order of first appearance on the boundary.
    const std::vector<std::string>& arcs() const { return arcs_; }

    /// Boundary segments between consecutive arc-ends, as "X>Y". Segments
    /// crossing a stop are not chords.
    const std::vector<std::string>& segments() const { return segments_; }
    bool is_chord(const std::string& segment) const;

    /// V - E + F for the decomposition into arc-ends, arcs plus boundary
    /// segments, and faces.
    int euler_characteristic() const;
    int total_marks() const;

    nlohmann::json to_json() const;
    static MarkedSurface from_json(const nlohmann::json& j);

private:
    std::vector<std::vector<std::string>> boundaries_;
    std::vector<Face> faces_;
    std::vector<std::string> arcs_;
    std::vector<std::string> segments_;
    std::map<std::string, bool> chord_;
};

/// Splits "X>Y" into its arc-ends; throws on malformed input.
std::pair<std::string, std::string> segment_ends(const std::string& segment);
/// "L3+" -> "L3".
std::string arc_of_end(const std::string& end);

/// Annulus with arcs L0..Ln joining the two boundary circles and n+1
/// quadrilaterals, face i carrying marked point i.
MarkedSurface annulus(int n);

/// Disc obtained by excising L0: arcs L1..Ln, quadrilaterals marked 1..n-1
/// and bigons marked 0 (at L1) and n (at Ln).
MarkedSurface disc(int n);

struct GeneratedPresentation {
    Presentation presentation;
    /// One entry per rule, then one per differential, naming the source face.
    std::vector<std::string> provenance;
};

/// Vertices are arcs (labelled by arc name), arrows are chords (named by the
/// segment), quadrilaterals give relations and bigons give differentials.
/// Mark i is variable i of ring.
GeneratedPresentation generate_presentation(const MarkedSurface& s, const PolyRing& ring);

/// Arrow bijection witnessing that a and b coincide after relabelling.
/// vertex_map sends vertex labels of a to vertex labels of b. Returns the
/// image name in b of each arrow of a.
std::optional<std::map<std::string, std::string>> find_isomorphism(
    const Presentation& a, const Presentation& b,
    const std::map<std::string, std::string>& vertex_map);

/// "L3" -> "3" for every arc of the form L<digits>.
std::map<std::string, std::string> strip_arc_prefix(const Presentation& p);

}  // namespace tubencr
