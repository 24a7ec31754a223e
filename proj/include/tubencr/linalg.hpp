#pragma once

// Sparse exact linear algebra over a Field: an incremental row-echelon basis
// with optional bookkeeping of how each row was built from the inputs.

#include <cstddef>
#include <map>
#include <unordered_map>
#include <vector>

#include "tubencr/exactalg.hpp"

namespace tubencr {

using SparseVec = std::map<std::size_t, Scalar>;

/// v += c * w, dropping zeros.
void axpy(SparseVec& v, const Scalar& c, const SparseVec& w);
SparseVec scaled(const SparseVec& v, const Scalar& c);

/// Incremental echelon basis. Pivots are the smallest index of each row, so
/// callers control elimination preference by how they number coordinates.
class Echelon {
public:
    explicit Echelon(Field field) : field_(field) {}

    /// Inserts v (with provenance tag). Returns true if v was independent.
    /// A dependent insertion records tag - (combination) in dependencies().
    bool insert(SparseVec v, SparseVec tag = {});

    /// Remainder of v after elimination; *combination (if given) receives the
    /// tag combination of the subtracted rows.
    SparseVec reduce(SparseVec v, SparseVec* combination = nullptr) const;

    bool contains(const SparseVec& v) const { return reduce(v).empty(); }

    std::size_t rank() const { return rows_.size(); }
    const std::vector<SparseVec>& rows() const { return rows_; }
    const std::vector<SparseVec>& tags() const { return tags_; }
    /// Tag combinations of inserted vectors that summed to zero.
    const std::vector<SparseVec>& dependencies() const { return deps_; }
    std::size_t pivot_of(std::size_t row) const { return rows_[row].begin()->first; }

private:
    Field field_;
    std::vector<SparseVec> rows_;
    std::vector<SparseVec> tags_;
    std::unordered_map<std::size_t, std::size_t> pivot_row_;
    std::vector<SparseVec> deps_;
};

/// Nullspace of the linear map whose j-th column is columns[j]; each returned
/// vector is indexed by column number.
std::vector<SparseVec> nullspace(const Field& field, const std::vector<SparseVec>& columns);

}  // namespace tubencr
