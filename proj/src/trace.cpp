#include "subseries/trace.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace subseries {

PartialSumTrace PartialSumTrace::compute(const TermStream& stream, const IndexSet& set,
                                         u64 depth, NumericMode mode) {
    if (depth < 1) throw std::invalid_argument("trace depth must be >= 1");
    PartialSumTrace tr;
    tr.depth_ = depth;
    tr.mode_ = mode;
    tr.stream_label_ = stream.label;
    tr.set_description_ = set.describe();
    tr.sums_.resize(depth);
    tr.membership_ = std::make_shared<std::vector<bool>>(depth, false);

    std::vector<u64> checkpoints = TrendPolicy::decade_checkpoints(depth);
    std::size_t next_cp = 0;

    if (mode == NumericMode::ExactRational) {
        BigRat acc = 0;
        double cur = 0.0;
        for (u64 j = 1; j <= depth; ++j) {
            if (set.contains(j)) {
                (*tr.membership_)[j - 1] = true;
                acc += stream.term(j);
                cur = static_cast<double>(acc);
            }
            tr.sums_[j - 1] = cur;
            if (next_cp < checkpoints.size() && j == checkpoints[next_cp]) {
                tr.exact_checkpoints_.emplace_back(j, acc);
                ++next_cp;
            }
        }
        if (tr.exact_checkpoints_.empty() || tr.exact_checkpoints_.back().first != depth)
            tr.exact_checkpoints_.emplace_back(depth, acc);
    } else {
        StableSum acc;
        double cur = 0.0;
        for (u64 j = 1; j <= depth; ++j) {
            if (set.contains(j)) {
                (*tr.membership_)[j - 1] = true;
                acc.add(stream.term_d(j));
                cur = acc.value();
            }
            tr.sums_[j - 1] = cur;
        }
    }

    tr.min_ = tr.sums_[0];
    tr.max_ = tr.sums_[0];
    tr.argmin_ = tr.argmax_ = 1;
    for (u64 j = 2; j <= depth; ++j) {
        double s = tr.sums_[j - 1];
        if (s < tr.min_) {
            tr.min_ = s;
            tr.argmin_ = j;
        }
        if (s > tr.max_) {
            tr.max_ = s;
            tr.argmax_ = j;
        }
    }
    return tr;
}

PartialSumTrace PartialSumTrace::from_precomputed(std::string stream_label,
                                                  std::string set_desc,
                                                  std::vector<double> sums,
                                                  std::shared_ptr<std::vector<bool>> membership) {
    if (sums.empty() || !membership || membership->size() != sums.size())
        throw std::invalid_argument("precomputed trace needs matching sums and membership");
    PartialSumTrace tr;
    tr.depth_ = sums.size();
    tr.mode_ = NumericMode::CompensatedDouble;
    tr.stream_label_ = std::move(stream_label);
    tr.set_description_ = std::move(set_desc);
    tr.sums_ = std::move(sums);
    tr.membership_ = std::move(membership);
    tr.min_ = tr.max_ = tr.sums_[0];
    tr.argmin_ = tr.argmax_ = 1;
    for (u64 j = 2; j <= tr.depth_; ++j) {
        double s = tr.sums_[j - 1];
        if (s < tr.min_) {
            tr.min_ = s;
            tr.argmin_ = j;
        }
        if (s > tr.max_) {
            tr.max_ = s;
            tr.argmax_ = j;
        }
    }
    return tr;
}

const BigRat& PartialSumTrace::exact_final() const {
    if (mode_ != NumericMode::ExactRational || exact_checkpoints_.empty())
        throw std::logic_error("exact final sum only exists in exact mode");
    return exact_checkpoints_.back().second;
}

std::vector<Crossing> PartialSumTrace::crossings(double threshold) const {
    std::vector<Crossing> out;
    double prev = 0.0;  // S(0) = 0
    for (u64 j = 1; j <= depth_; ++j) {
        double cur = sums_[j - 1];
        if (prev <= threshold && cur > threshold) out.push_back({threshold, j, true});
        if (prev > threshold && cur <= threshold) out.push_back({threshold, j, false});
        prev = cur;
    }
    return out;
}

std::vector<u64> TrendPolicy::decade_checkpoints(u64 depth) {
    std::vector<u64> out;
    for (u64 c = 100; c < depth; c *= 10) out.push_back(c);
    if (out.empty() || out.back() != depth) out.push_back(depth);
    return out;
}

namespace {

bool strictly_trending(const PartialSumTrace& trace, const std::vector<u64>& cps, bool up) {
    for (std::size_t i = 1; i < cps.size(); ++i) {
        double a = trace.sum_at(cps[i - 1]);
        double b = trace.sum_at(cps[i]);
        if (up ? (b <= a) : (b >= a)) return false;
    }
    return true;
}

}  // namespace

Verdict empirical_verdict(const PartialSumTrace& trace, const TrendPolicy& policy) {
    const double T = policy.threshold;
    const double M = policy.margin;
    std::vector<u64> cps = policy.checkpoints;
    if (cps.empty()) cps = TrendPolicy::decade_checkpoints(trace.depth());
    std::erase_if(cps, [&](u64 c) { return c < 1 || c > trace.depth(); });

    // oscillation: both signed thresholds crossed, one after the other
    auto up_events = trace.crossings(T);
    auto down_events = trace.crossings(-T);
    u64 first_above = 0, first_below = 0, last_above = 0, last_below = 0;
    for (const auto& c : up_events)
        if (c.upward) {
            if (!first_above) first_above = c.index;
            last_above = c.index;
        }
    for (const auto& c : down_events)
        if (!c.upward) {
            if (!first_below) first_below = c.index;
            last_below = c.index;
        }
    if (first_above && first_below &&
        (last_below > first_above || last_above > first_below))
        return Verdict::Oscillates;

    // +inf: exceed T after the last dip below T - margin, with rising decades
    {
        u64 last_dip = 0;
        for (u64 j = 1; j <= trace.depth(); ++j)
            if (trace.sum_at(j) < T - M) last_dip = j;
        bool exceeded = false;
        for (u64 j = last_dip + 1; j <= trace.depth(); ++j)
            if (trace.sum_at(j) > T) {
                exceeded = true;
                break;
            }
        if (exceeded && strictly_trending(trace, cps, true)) return Verdict::PlusInfinity;
    }
    // -inf mirror
    {
        u64 last_dip = 0;
        for (u64 j = 1; j <= trace.depth(); ++j)
            if (trace.sum_at(j) > -T + M) last_dip = j;
        bool exceeded = false;
        for (u64 j = last_dip + 1; j <= trace.depth(); ++j)
            if (trace.sum_at(j) < -T) {
                exceeded = true;
                break;
            }
        if (exceeded && strictly_trending(trace, cps, false)) return Verdict::MinusInfinity;
    }
    return Verdict::Unknown;
}

}  // namespace subseries
