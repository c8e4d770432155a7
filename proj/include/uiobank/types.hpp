#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace uiobank {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Sorted, duplicate-free list of 1-based actuator indices into {1..p}.
using IndexSet = std::vector<int>;

/// Numeric cutoffs shared by every module. All values must be strictly
/// positive and schur_margin must stay below 1.
struct Tolerances {
    double rank_tol = 1e-10;      // relative singular-value cutoff
    double residual_tol = 1e-10;  // max-abs design-equation residual
    double schur_margin = 1e-9;   // required eigenvalue gap below the unit circle
    double support_eps = 0.05;    // attack-support threshold

    friend bool operator==(const Tolerances&, const Tolerances&) = default;
};

inline void validate(const Tolerances& tol) {
    if (!(tol.rank_tol > 0.0 && tol.residual_tol > 0.0 && tol.schur_margin > 0.0 &&
          tol.support_eps > 0.0)) {
        throw std::invalid_argument("Tolerances: all cutoffs must be strictly positive");
    }
    if (!(tol.schur_margin < 1.0)) {
        throw std::invalid_argument("Tolerances: schur_margin must be below 1");
    }
}

class DimensionError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

class InvalidMatrixError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Gain synthesis asked for an infeasible pair (undetectable/unstabilizable).
class SynthesisError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// An iterative kernel exceeded its cap or a computed postcondition failed.
class NumericError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class CertificateUnavailableError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Feasibility conditions for complete (c1, c2) and partial (c3, c4)
/// unknown-input observer designs.
enum class Condition { c1, c2, c3, c4 };

inline const char* to_string(Condition c) {
    switch (c) {
        case Condition::c1: return "c1";
        case Condition::c2: return "c2";
        case Condition::c3: return "c3";
        case Condition::c4: return "c4";
    }
    return "?";
}

/// Observer design rejected; carries the violated condition and the actuator
/// subset (empty for the complete observer).
class DesignError : public std::runtime_error {
  public:
    DesignError(Condition cond, IndexSet subset, const std::string& message)
        : std::runtime_error(message), condition_(cond), subset_(std::move(subset)) {}

    Condition condition() const { return condition_; }
    const IndexSet& subset() const { return subset_; }

  private:
    Condition condition_;
    IndexSet subset_;
};

/// Raised by the closed loop when more actuators are isolated than the
/// controller was synthesized to lose.
class SafetyStopError : public std::runtime_error {
  public:
    SafetyStopError(std::int64_t k, IndexSet w_hat, const std::string& message)
        : std::runtime_error(message), k_(k), w_hat_(std::move(w_hat)) {}

    std::int64_t time_index() const { return k_; }
    const IndexSet& isolated() const { return w_hat_; }

  private:
    std::int64_t k_;
    IndexSet w_hat_;
};

// ---- index-set helpers ----

/// All size-k subsets of {1..p} in lexicographic order.
inline std::vector<IndexSet> subsets_of_size(int p, int k) {
    std::vector<IndexSet> out;
    if (k < 0 || k > p) return out;
    IndexSet cur(static_cast<std::size_t>(k));
    // iterative combination walk
    std::vector<int> idx(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i + 1;
    while (true) {
        out.emplace_back(idx.begin(), idx.end());
        int i = k - 1;
        while (i >= 0 && idx[static_cast<std::size_t>(i)] == p - (k - 1 - i)) --i;
        if (i < 0) break;
        ++idx[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < k; ++j)
            idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
    (void)cur;
    return out;
}

inline bool is_subset(const IndexSet& a, const IndexSet& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

inline bool contains(const IndexSet& s, int i) {
    return std::binary_search(s.begin(), s.end(), i);
}

inline IndexSet set_complement(const IndexSet& s, int p) {
    IndexSet out;
    out.reserve(static_cast<std::size_t>(p) - s.size());
    for (int i = 1; i <= p; ++i)
        if (!contains(s, i)) out.push_back(i);
    return out;
}

inline IndexSet set_union(const IndexSet& a, const IndexSet& b) {
    IndexSet out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

/// "1;3" for {1,3}, "-" for the empty set. Used by the CSV trace.
inline std::string set_to_string(const IndexSet& s) {
    if (s.empty()) return "-";
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) out += ';';
        out += std::to_string(s[i]);
    }
    return out;
}

inline std::string set_to_braced(const IndexSet& s) {
    return "{" + (s.empty() ? std::string() : set_to_string(s)) + "}";
}

}  // namespace uiobank
