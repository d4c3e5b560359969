#include "hoprisk/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>

#include "hoprisk/errors.hpp"

namespace hoprisk {

namespace {

double proportion(double value, int size) { return size > 0 ? value / size : 0.0; }

void require_paired(std::span<const int> x, std::span<const int> y) {
    if (x.size() != y.size()) throw ModelError("paired samples differ in length");
    if (x.size() < 2) throw ModelError("dependence measures need at least two samples");
    for (std::size_t k = 0; k < x.size(); ++k) {
        if (x[k] < 0 || y[k] < 0) throw ModelError("dependence measures expect non-negative counts");
    }
}

std::optional<double> pearson_of(std::span<const double> x, std::span<const double> y) {
    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        mx += x[k];
        my += y[k];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        const double dx = x[k] - mx, dy = y[k] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0) return std::nullopt;
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

std::vector<double> average_ranks(std::span<const int> x) {
    const int top = *std::max_element(x.begin(), x.end());
    std::vector<std::int64_t> freq(static_cast<std::size_t>(top) + 1, 0);
    for (int v : x) ++freq[v];
    std::vector<double> rank_of(freq.size());
    std::int64_t below = 0;
    for (std::size_t v = 0; v < freq.size(); ++v) {
        rank_of[v] = static_cast<double>(below) + (static_cast<double>(freq[v]) + 1.0) / 2.0;
        below += freq[v];
    }
    std::vector<double> ranks(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) ranks[k] = rank_of[x[k]];
    return ranks;
}

// Two-dimensional joint table of a pair of margins.
struct PairTable {
    std::size_t rows = 0, cols = 0;
    std::vector<double> cell;  // rows x cols
    double operator()(std::size_t a, std::size_t b) const { return cell[a * cols + b]; }
};

// tail[a][b] = sum over cells with row >= a and col >= b, padded by one.
std::vector<double> tail_sums(const PairTable& t) {
    const std::size_t w = t.cols + 1;
    std::vector<double> tail((t.rows + 1) * w, 0.0);
    for (std::size_t a = t.rows; a-- > 0;) {
        for (std::size_t b = t.cols; b-- > 0;) {
            tail[a * w + b] = t(a, b) + tail[(a + 1) * w + b] + tail[a * w + b + 1] - tail[(a + 1) * w + b + 1];
        }
    }
    return tail;
}

// Concordant minus discordant weight: sum_{a,b} t(a,b) * [T(>a,>b) - T(>a,<b)].
double concordance_balance(const PairTable& t) {
    const std::size_t w = t.cols + 1;
    const auto tail = tail_sums(t);
    double balance = 0.0;
    for (std::size_t a = 0; a + 1 < t.rows; ++a) {
        for (std::size_t b = 0; b < t.cols; ++b) {
            const double here = t(a, b);
            if (here == 0.0) continue;
            const double above_right = tail[(a + 1) * w + b + 1];
            const double above_left = tail[(a + 1) * w] - tail[(a + 1) * w + b];
            balance += here * (above_right - above_left);
        }
    }
    return balance;
}

PairTable pair_table_from_pmf(const JointPmf& pmf, std::size_t i, std::size_t j) {
    PairTable t;
    t.rows = static_cast<std::size_t>(pmf.type_sizes()[i]) + 1;
    t.cols = static_cast<std::size_t>(pmf.type_sizes()[j]) + 1;
    t.cell.assign(t.rows * t.cols, 0.0);
    for (std::size_t flat = 0; flat < pmf.cell_count(); ++flat) {
        const auto c = pmf.counts_of(flat);
        t.cell[static_cast<std::size_t>(c[i]) * t.cols + static_cast<std::size_t>(c[j])] += pmf[flat];
    }
    return t;
}

bool point_mass(std::span<const double> margin) {
    return *std::max_element(margin.begin(), margin.end()) >= 1.0 - 1e-12;
}

DependenceSummary population_dependence(const PairTable& t) {
    std::vector<double> px(t.rows, 0.0), py(t.cols, 0.0);
    for (std::size_t a = 0; a < t.rows; ++a)
        for (std::size_t b = 0; b < t.cols; ++b) {
            px[a] += t(a, b);
            py[b] += t(a, b);
        }
    if (point_mass(px) || point_mass(py)) return {};

    auto corr = [&](std::span<const double> sx, std::span<const double> sy) {
        double mx = 0, my = 0;
        for (std::size_t a = 0; a < t.rows; ++a) mx += px[a] * sx[a];
        for (std::size_t b = 0; b < t.cols; ++b) my += py[b] * sy[b];
        double cxy = 0, vx = 0, vy = 0;
        for (std::size_t a = 0; a < t.rows; ++a) vx += px[a] * (sx[a] - mx) * (sx[a] - mx);
        for (std::size_t b = 0; b < t.cols; ++b) vy += py[b] * (sy[b] - my) * (sy[b] - my);
        for (std::size_t a = 0; a < t.rows; ++a)
            for (std::size_t b = 0; b < t.cols; ++b) cxy += t(a, b) * (sx[a] - mx) * (sy[b] - my);
        return std::clamp(cxy / std::sqrt(vx * vy), -1.0, 1.0);
    };

    std::vector<double> vx(t.rows), vy(t.cols);
    for (std::size_t a = 0; a < t.rows; ++a) vx[a] = static_cast<double>(a);
    for (std::size_t b = 0; b < t.cols; ++b) vy[b] = static_cast<double>(b);

    // mid-distribution transforms F(v-) + p(v)/2
    std::vector<double> rx(t.rows), ry(t.cols);
    double acc = 0;
    for (std::size_t a = 0; a < t.rows; ++a) {
        rx[a] = acc + px[a] / 2;
        acc += px[a];
    }
    acc = 0;
    for (std::size_t b = 0; b < t.cols; ++b) {
        ry[b] = acc + py[b] / 2;
        acc += py[b];
    }

    double tie_x = 0, tie_y = 0;
    for (double v : px) tie_x += v * v;
    for (double v : py) tie_y += v * v;
    const double tau = 2.0 * concordance_balance(t) / std::sqrt((1.0 - tie_x) * (1.0 - tie_y));

    DependenceSummary out;
    out.pearson = corr(vx, vy);
    out.kendall = std::clamp(tau, -1.0, 1.0);
    out.spearman = corr(rx, ry);
    return out;
}

void check_orthant_point(const JointPmf& pmf, std::span<const int> x) {
    if (x.size() != pmf.type_count()) throw ModelError("orthant point has wrong dimension");
    for (std::size_t t = 0; t < x.size(); ++t) {
        if (x[t] < -1 || x[t] > pmf.type_sizes()[t]) throw ModelError("orthant point outside -1..N_i");
    }
}

}  // namespace

MomentSummary marginal_moments(const JointPmf& pmf) {
    if (pmf.cell_count() == 0) throw ModelError("empty PMF");
    MomentSummary out;
    for (std::size_t t = 0; t < pmf.type_count(); ++t) {
        const int size = pmf.type_sizes()[t];
        std::vector<double> margin(static_cast<std::size_t>(size) + 1);
        for (int c = 0; c <= size; ++c) margin[c] = pmf.marginal(t, c);
        double mean = 0.0;
        for (int c = 0; c <= size; ++c) mean += c * margin[c];
        double var = 0.0;
        for (int c = 0; c <= size; ++c) var += margin[c] * (c - mean) * (c - mean);
        const double sd = std::sqrt(var);
        out.types.push_back({mean, sd, proportion(mean, size), proportion(sd, size)});
    }
    return out;
}

MomentSummary marginal_moments(const SampleMatrix& samples, int depth) {
    if (samples.runs() == 0) throw ModelError("no samples");
    MomentSummary out;
    const double n = static_cast<double>(samples.runs());
    for (std::size_t t = 0; t < samples.type_count(); ++t) {
        const auto col = samples.column(depth, t);
        double mean = 0.0;
        for (int v : col) mean += v;
        mean /= n;
        double ss = 0.0;
        for (int v : col) ss += (v - mean) * (v - mean);
        const double sd = samples.runs() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
        const int size = samples.type_sizes()[t];
        out.types.push_back({mean, sd, proportion(mean, size), proportion(sd, size)});
    }
    return out;
}

std::optional<double> pearson(std::span<const int> x, std::span<const int> y) {
    require_paired(x, y);
    std::vector<double> dx(x.begin(), x.end()), dy(y.begin(), y.end());
    return pearson_of(dx, dy);
}

std::optional<double> kendall_tau_b(std::span<const int> x, std::span<const int> y) {
    require_paired(x, y);
    PairTable t;
    t.rows = static_cast<std::size_t>(*std::max_element(x.begin(), x.end())) + 1;
    t.cols = static_cast<std::size_t>(*std::max_element(y.begin(), y.end())) + 1;
    t.cell.assign(t.rows * t.cols, 0.0);
    for (std::size_t k = 0; k < x.size(); ++k) t.cell[static_cast<std::size_t>(x[k]) * t.cols + y[k]] += 1.0;

    const double n = static_cast<double>(x.size());
    const double pairs = n * (n - 1.0) / 2.0;
    double ties_x = 0.0, ties_y = 0.0;
    for (std::size_t a = 0; a < t.rows; ++a) {
        double c = 0.0;
        for (std::size_t b = 0; b < t.cols; ++b) c += t(a, b);
        ties_x += c * (c - 1.0) / 2.0;
    }
    for (std::size_t b = 0; b < t.cols; ++b) {
        double c = 0.0;
        for (std::size_t a = 0; a < t.rows; ++a) c += t(a, b);
        ties_y += c * (c - 1.0) / 2.0;
    }
    if (pairs == ties_x || pairs == ties_y) return std::nullopt;
    const double tau = concordance_balance(t) / std::sqrt((pairs - ties_x) * (pairs - ties_y));
    return std::clamp(tau, -1.0, 1.0);
}

std::optional<double> spearman_rho(std::span<const int> x, std::span<const int> y) {
    require_paired(x, y);
    const auto rx = average_ranks(x);
    const auto ry = average_ranks(y);
    return pearson_of(rx, ry);
}

DependenceSummary dependence(std::span<const int> x, std::span<const int> y) {
    return {pearson(x, y), kendall_tau_b(x, y), spearman_rho(x, y)};
}

std::vector<PairDependence> correlations(const SampleMatrix& samples, int depth) {
    if (samples.type_count() < 2) throw ModelError("correlations need at least two types");
    if (samples.runs() < 2) throw ModelError("correlations need at least two runs");
    std::vector<PairDependence> out;
    for (std::size_t i = 0; i < samples.type_count(); ++i) {
        const auto xi = samples.column(depth, i);
        for (std::size_t j = i + 1; j < samples.type_count(); ++j) {
            const auto xj = samples.column(depth, j);
            out.push_back({i, j, dependence(xi, xj)});
        }
    }
    return out;
}

std::vector<PairDependence> correlations(const JointPmf& pmf) {
    if (pmf.type_count() < 2) throw ModelError("correlations need at least two types");
    std::vector<PairDependence> out;
    for (std::size_t i = 0; i < pmf.type_count(); ++i)
        for (std::size_t j = i + 1; j < pmf.type_count(); ++j)
            out.push_back({i, j, population_dependence(pair_table_from_pmf(pmf, i, j))});
    return out;
}

double upper_orthant_survival(const JointPmf& pmf, std::span<const int> x) {
    check_orthant_point(pmf, x);
    double s = 0.0;
    for (std::size_t flat = 0; flat < pmf.cell_count(); ++flat) {
        const auto y = pmf.counts_of(flat);
        bool above = true;
        for (std::size_t t = 0; t < y.size() && above; ++t) above = y[t] > x[t];
        if (above) s += pmf[flat];
    }
    return s;
}

double lower_orthant_cdf(const JointPmf& pmf, std::span<const int> x) {
    check_orthant_point(pmf, x);
    double s = 0.0;
    for (std::size_t flat = 0; flat < pmf.cell_count(); ++flat) {
        const auto y = pmf.counts_of(flat);
        bool below = true;
        for (std::size_t t = 0; t < y.size() && below; ++t) below = y[t] <= x[t];
        if (below) s += pmf[flat];
    }
    return s;
}

namespace {

// Cumulative sums along every axis; `upward` gives tail sums T(y) = P(X >= y),
// otherwise prefix sums F(y) = P(X <= y).
std::vector<double> cumulate(const JointPmf& pmf, bool upward) {
    std::vector<double> acc(pmf.probs().begin(), pmf.probs().end());
    const auto& sizes = pmf.type_sizes();
    std::size_t stride = 1;
    for (std::size_t t = sizes.size(); t-- > 0;) {
        const std::size_t dim = static_cast<std::size_t>(sizes[t]) + 1;
        for (std::size_t flat = 0; flat < acc.size(); ++flat) {
            const std::size_t pos = (flat / stride) % dim;
            if (upward) {
                // visit in reverse so the neighbour above is final
                const std::size_t rev = acc.size() - 1 - flat;
                const std::size_t rpos = (rev / stride) % dim;
                if (rpos + 1 < dim) acc[rev] += acc[rev + stride];
            } else if (pos > 0) {
                acc[flat] += acc[flat - stride];
            }
        }
        stride *= dim;
    }
    return acc;
}

}  // namespace

OrderReport check_orthant_monotone(const JointPmf& lo, const JointPmf& hi, double tol) {
    if (lo.type_sizes() != hi.type_sizes()) throw ModelError("PMFs have different dimensions");
    OrderReport report;
    report.claim = "lo <=_st hi (upper-orthant survival and lower-orthant CDF conditions)";
    report.tolerance = tol;

    const auto tail_lo = cumulate(lo, true), tail_hi = cumulate(hi, true);
    const auto cdf_lo = cumulate(lo, false), cdf_hi = cumulate(hi, false);
    for (std::size_t flat = 0; flat < lo.cell_count(); ++flat) {
        // P(X > y - 1) = P(X >= y)
        const double up = tail_lo[flat] - tail_hi[flat];
        if (up > tol) {
            auto point = lo.counts_of(flat);
            for (int& v : point) --v;
            report.violations.push_back({std::move(point), OrthantKind::upper_survival, up});
        }
        report.max_violation = std::max(report.max_violation, up);

        const double down = cdf_hi[flat] - cdf_lo[flat];
        if (down > tol) report.violations.push_back({lo.counts_of(flat), OrthantKind::lower_cdf, down});
        report.max_violation = std::max(report.max_violation, down);
    }
    report.passed = report.max_violation <= tol;
    return report;
}

std::string format_report(const OrderReport& report) {
    std::ostringstream out;
    out.precision(6);
    out << "claim: " << report.claim << '\n';
    out << "tolerance: " << report.tolerance << '\n';
    out << "max violation: " << report.max_violation << '\n';
    out << "violations: " << report.violations.size() << '\n';
    for (const auto& v : report.violations) {
        out << "  " << (v.kind == OrthantKind::upper_survival ? "P(X > x)" : "P(X <= x)") << " at x=(";
        for (std::size_t t = 0; t < v.point.size(); ++t) out << (t ? "," : "") << v.point[t];
        out << ") off by " << v.magnitude << '\n';
    }
    out << "result: " << (report.passed ? "PASS" : "FAIL") << '\n';
    return out.str();
}

}  // namespace hoprisk
