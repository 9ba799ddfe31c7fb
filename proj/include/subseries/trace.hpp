#pragma once

#include "subseries/index_set.hpp"
#include "subseries/rational.hpp"
#include "subseries/stream.hpp"
#include "subseries/verdict.hpp"

#include <memory>
#include <vector>

namespace subseries {

enum class NumericMode : std::uint8_t {
    ExactRational,       // full-precision running sums; feasible to ~2e4 terms
    CompensatedDouble,   // Neumaier-compensated doubles; ~1e-12 per 1e6 terms
};

// Two-term compensated accumulator (Neumaier). The running error stays near
// eps * max|S| rather than growing with the term count.
struct StableSum {
    double hi = 0.0;
    double lo = 0.0;
    void add(double x) {
        double t = hi + x;
        if (std::abs(hi) >= std::abs(x))
            lo += (hi - t) + x;
        else
            lo += (x - t) + hi;
        hi = t;
    }
    double value() const { return hi + lo; }
};

struct Crossing {
    double threshold;  // signed
    u64 index;
    bool upward;
};

// Finite prefix of running sums S(j) = sum of a_n over n in A, n <= j.
class PartialSumTrace {
public:
    static PartialSumTrace compute(const TermStream& stream, const IndexSet& set, u64 depth,
                                   NumericMode mode = NumericMode::CompensatedDouble);

    // adopt sums and membership computed elsewhere (same S(j) convention)
    static PartialSumTrace from_precomputed(std::string stream_label, std::string set_desc,
                                            std::vector<double> sums,
                                            std::shared_ptr<std::vector<bool>> membership);

    u64 depth() const { return depth_; }
    NumericMode mode() const { return mode_; }
    double sum_at(u64 j) const { return sums_.at(j - 1); }
    double final_sum() const { return sums_.back(); }
    const std::vector<double>& sums() const { return sums_; }
    bool in_set(u64 j) const { return (*membership_)[j - 1]; }
    std::shared_ptr<const std::vector<bool>> membership() const { return membership_; }

    double running_min() const { return min_; }
    double running_max() const { return max_; }
    u64 argmin() const { return argmin_; }
    u64 argmax() const { return argmax_; }

    // exact running sums at decade checkpoints and at depth (exact mode only)
    const std::vector<std::pair<u64, BigRat>>& exact_checkpoints() const {
        return exact_checkpoints_;
    }
    const BigRat& exact_final() const;

    // every strict crossing of the signed threshold, in index order
    std::vector<Crossing> crossings(double threshold) const;

    const std::string& stream_label() const { return stream_label_; }
    const std::string& set_description() const { return set_description_; }

private:
    u64 depth_ = 0;
    NumericMode mode_ = NumericMode::CompensatedDouble;
    std::vector<double> sums_;
    std::shared_ptr<std::vector<bool>> membership_;
    std::vector<std::pair<u64, BigRat>> exact_checkpoints_;
    double min_ = 0, max_ = 0;
    u64 argmin_ = 0, argmax_ = 0;
    std::string stream_label_, set_description_;
};

// Finite-prefix divergence heuristic. Checkpoint sums must strictly trend in
// the claimed direction, the trace must exceed the threshold, and it must not
// fall back below threshold - margin afterwards. Both signed thresholds
// crossed in opposite order reads as oscillation. Convergence is never
// claimed from a finite prefix.
struct TrendPolicy {
    double threshold = 2.0;
    double margin = 0.5;
    std::vector<u64> checkpoints;  // empty = decades 100, 1000, ... up to depth

    static std::vector<u64> decade_checkpoints(u64 depth);
};

Verdict empirical_verdict(const PartialSumTrace& trace, const TrendPolicy& policy);

inline PartialSumTrace partial_sum_trace(const TermStream& stream, const IndexSet& set,
                                         u64 depth,
                                         NumericMode mode = NumericMode::CompensatedDouble) {
    return PartialSumTrace::compute(stream, set, depth, mode);
}

}  // namespace subseries
