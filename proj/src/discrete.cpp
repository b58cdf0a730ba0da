#include "preisach/discrete.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace preisach {

int relay_update(int state, double input, double alpha, double beta) {
    if (alpha < beta) {
        throw MalformedRelayError("relay thresholds alpha=" + std::to_string(alpha) +
                                  " < beta=" + std::to_string(beta));
    }
    if (state != 1 && state != -1) {
        throw std::invalid_argument("relay state must be +1 or -1");
    }
    if (input > alpha) return 1;
    if (input < beta) return -1;
    return state;
}

DiscretePreisach::DiscretePreisach(int levels, PlaneBounds bounds, double relay_weight)
    : n_(levels), bounds_(bounds), h_(bounds.span() / levels) {
    if (levels < 1) throw std::invalid_argument("DiscretePreisach: levels must be >= 1");
    if (relay_weight < 0.0) {
        throw std::invalid_argument("DiscretePreisach: relay weight must be nonnegative");
    }
    row_offset_.resize(static_cast<std::size_t>(n_) + 1);
    std::size_t off = 0;
    for (int b = 0; b <= n_; ++b) {
        row_offset_[b] = off;
        off += static_cast<std::size_t>(n_ - b);
    }
    states_.assign(row_offset_[n_], std::int8_t{-1});
    weights_.assign(row_offset_[n_], relay_weight);
}

DiscretePreisach DiscretePreisach::discretize(const WeightField& w, int levels) {
    DiscretePreisach op(levels, w.bounds(), 0.0);
    for (int b = 0; b < levels; ++b) {
        const double y1 = op.edge(b);
        const double y2 = op.edge(b + 1);
        double* row = op.weights_.data() + op.row_offset_[b];
        // diagonal cell: half-cell triangle integral
        row[0] = w.rect_mass_below_diagonal(op.edge(b), op.edge(b + 1), y1, y2);
        for (int a = b + 1; a < levels; ++a) {
            row[a - b] = w.rect_mass(op.edge(a), op.edge(a + 1), y1, y2);
        }
    }
    return op;
}

std::size_t DiscretePreisach::index(int a, int b) const {
    if (b < 0 || a < b || a >= n_) {
        throw std::out_of_range("relay index (" + std::to_string(a) + ", " + std::to_string(b) +
                                ") outside the triangular grid");
    }
    return row_offset_[b] + static_cast<std::size_t>(a - b);
}

std::int8_t DiscretePreisach::to_state(int s) {
    if (s != 1 && s != -1) throw std::invalid_argument("relay state must be +1 or -1");
    return static_cast<std::int8_t>(s);
}

double DiscretePreisach::total_weight_mass() const {
    return std::accumulate(weights_.begin(), weights_.end(), 0.0);
}

double DiscretePreisach::max_column_mass() const {
    std::vector<double> col(static_cast<std::size_t>(n_), 0.0);
    for (int b = 0; b < n_; ++b) {
        const double* row = weights_.data() + row_offset_[b];
        for (int a = b; a < n_; ++a) col[a] += row[a - b];
    }
    return *std::max_element(col.begin(), col.end());
}

double DiscretePreisach::output() const {
    double out = 0.0;
    const std::size_t m = states_.size();
    for (std::size_t i = 0; i < m; ++i) {
        out += weights_[i] * static_cast<double>(states_[i]);
    }
    return out;
}

void DiscretePreisach::ramp_to(double u) {
    // Levels strictly below u: those alphas are forced on.
    int k = 0;
    {
        int lo = 0;
        int hi = n_;
        while (lo < hi) {
            const int mid = lo + (hi - lo) / 2;
            if (level(mid) < u) {
                lo = mid + 1;
            } else {
                hi = mid;
            }
        }
        k = lo;
    }
    // Levels at most u: rows beyond have beta above u and are forced off.
    int m = k;
    while (m < n_ && level(m) <= u) ++m;

    for (int b = m; b < n_; ++b) {
        std::int8_t* row = states_.data() + row_offset_[b];
        std::fill(row, row + (n_ - b), std::int8_t{-1});
    }
    const int kb = std::min(k, n_);
    for (int b = 0; b < kb; ++b) {
        std::int8_t* row = states_.data() + row_offset_[b];
        std::fill(row, row + (k - b), std::int8_t{1});
    }
    input_ = u;
}

double DiscretePreisach::apply_value(double u) {
    if (!bounds_.contains(u)) throw InputRangeError(u, 0, bounds_.lo, bounds_.hi);
    ramp_to(u);
    return output();
}

std::vector<double> DiscretePreisach::apply_input(std::span<const double> samples) {
    if (samples.empty()) {
        throw std::invalid_argument("apply_input: samples must be non-empty");
    }
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (!bounds_.contains(samples[i])) {
            throw InputRangeError(samples[i], i, bounds_.lo, bounds_.hi);
        }
    }
    std::vector<double> out;
    out.reserve(samples.size());
    for (const double u : samples) {
        ramp_to(u);
        out.push_back(output());
    }
    return out;
}

void DiscretePreisach::set_all(int state) {
    std::fill(states_.begin(), states_.end(), to_state(state));
    input_ = 0.0;
}

void DiscretePreisach::load_interface(const InterfaceLine& line) {
    if (!(line.bounds() == bounds_)) {
        throw std::invalid_argument("load_interface: bounds mismatch");
    }
    const double s = line.diagonal_start();
    std::vector<double> prof(static_cast<std::size_t>(n_), 0.0);
    std::vector<char> forced_on(static_cast<std::size_t>(n_), 0);
    for (int a = 0; a < n_; ++a) {
        const double x = level(a);
        if (x < s) {
            forced_on[a] = 1;
        } else {
            prof[a] = line.profile_right(x);
        }
    }
    for (int b = 0; b < n_; ++b) {
        const double y = level(b);
        std::int8_t* row = states_.data() + row_offset_[b];
        for (int a = b; a < n_; ++a) {
            row[a - b] = (forced_on[a] != 0 || y < prof[a]) ? std::int8_t{1} : std::int8_t{-1};
        }
    }
    input_ = 0.0;
}

InterfaceLine DiscretePreisach::interface() const {
    // Per-row cut: first off relay; everything before must be on.
    std::vector<int> cut(static_cast<std::size_t>(n_));
    for (int b = 0; b < n_; ++b) {
        const std::int8_t* row = states_.data() + row_offset_[b];
        const int len = n_ - b;
        int c = 0;
        while (c < len && row[c] == 1) ++c;
        for (int a = c; a < len; ++a) {
            if (row[a] == 1) {
                throw RepresentabilityError("relay row " + std::to_string(b) +
                                            " is not a +1-prefix: relay partition is not a "
                                            "staircase");
            }
        }
        cut[b] = b + c;
    }
    for (int b = 0; b + 1 < n_; ++b) {
        if (cut[b + 1] > std::max(cut[b], b + 1)) {
            throw RepresentabilityError("relay rows " + std::to_string(b) + " and " +
                                        std::to_string(b + 1) +
                                        " violate staircase nesting: relay partition is not a "
                                        "staircase");
        }
    }

    int t = 0;
    for (int b = n_ - 1; b >= 0; --b) {
        if (cut[b] > b) {
            t = b + 1;
            break;
        }
    }

    std::vector<PlanePoint> verts;
    verts.push_back({edge(t), edge(t)});
    int cur = t;
    for (int b = t - 1; b >= 0; --b) {
        if (cut[b] > cur) {
            verts.push_back({edge(cur), edge(b + 1)});
            verts.push_back({edge(cut[b]), edge(b + 1)});
            cur = cut[b];
        }
    }
    verts.push_back({edge(cur), edge(0)});
    return InterfaceLine(bounds_, std::move(verts));
}

}  // namespace preisach
