#include "tubencr/linalg.hpp"

namespace tubencr {

void axpy(SparseVec& v, const Scalar& c, const SparseVec& w) {
    if (c.is_zero()) return;
    for (const auto& [k, x] : w) {
        auto it = v.find(k);
        if (it == v.end()) {
            v.emplace(k, c * x);
        } else {
            it->second += c * x;
            if (it->second.is_zero()) v.erase(it);
        }
    }
}

SparseVec scaled(const SparseVec& v, const Scalar& c) {
    SparseVec out;
    if (c.is_zero()) return out;
    for (const auto& [k, x] : v) out.emplace(k, c * x);
    return out;
}

SparseVec Echelon::reduce(SparseVec v, SparseVec* combination) const {
    if (combination) combination->clear();
    auto it = v.begin();
    while (it != v.end()) {
        auto pr = pivot_row_.find(it->first);
        if (pr == pivot_row_.end()) {
            ++it;
            continue;
        }
        const std::size_t key = it->first;
        const Scalar c = it->second;
        const SparseVec& row = rows_[pr->second];
        axpy(v, -c, row);
        if (combination) axpy(*combination, c, tags_[pr->second]);
        // Row entries all have index >= key, and the key entry is now gone.
        it = v.upper_bound(key);
    }
    return v;
}

bool Echelon::insert(SparseVec v, SparseVec tag) {
    SparseVec combo;
    SparseVec rem = reduce(std::move(v), &combo);
    axpy(tag, Scalar(field_, -1), combo);
    if (rem.empty()) {
        if (!tag.empty()) deps_.push_back(std::move(tag));
        return false;
    }
    const Scalar inv = rem.begin()->second.inverse();
    rem = scaled(rem, inv);
    tag = scaled(tag, inv);
    pivot_row_.emplace(rem.begin()->first, rows_.size());
    rows_.push_back(std::move(rem));
    tags_.push_back(std::move(tag));
    return true;
}

std::vector<SparseVec> nullspace(const Field& field, const std::vector<SparseVec>& columns) {
    Echelon e(field);
    for (std::size_t j = 0; j < columns.size(); ++j) {
        e.insert(columns[j], SparseVec{{j, Scalar(field, 1)}});
    }
    return e.dependencies();
}

}  // namespace tubencr
