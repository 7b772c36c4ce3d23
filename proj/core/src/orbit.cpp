#include "hyperaff/orbit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <queue>
#include <random>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace hyperaff {

namespace {

constexpr double kEscapeNorm = 1e12;

std::string state_key(const std::vector<std::complex<double>>& x) {
    // dedupe at 1e-12 absolute resolution
    std::string key;
    char buf[64];
    for (const auto& z : x) {
        std::snprintf(buf, sizeof buf, "%.0f,%.0f;", z.real() * 1e12, z.imag() * 1e12);
        key += buf;
    }
    return key;
}

double max_norm(const std::vector<std::complex<double>>& x) {
    double m = 0;
    for (const auto& z : x) m = std::max({m, std::abs(z.real()), std::abs(z.imag())});
    return m;
}

std::vector<std::complex<double>> apply_float(const AffineMap& f,
                                              const std::vector<std::complex<double>>& x) {
    std::vector<std::complex<double>> y(f.n);
    for (std::size_t i = 0; i < f.n; ++i) {
        std::complex<double> s = f.a[i].approx();
        for (std::size_t j = 0; j < f.n; ++j) s += f.A.at(i, j).approx() * x[j];
        y[i] = s;
    }
    return y;
}

}  // namespace

OrbitSample sample_orbit(const std::vector<AffineMap>& fs, const SimConfig& cfg) {
    if (fs.empty()) throw std::invalid_argument("sample_orbit: empty family");
    const std::size_t n = fs.front().n;
    for (const auto& f : fs)
        if (f.n != n) throw DimensionMismatch("sample_orbit: mixed dimensions");
    std::vector<std::complex<double>> start = cfg.start;
    if (start.empty()) start.assign(n, {0.0, 0.0});
    if (start.size() != n) throw DimensionMismatch("sample_orbit: start length != n");

    std::vector<AffineMap> family = fs;
    if (cfg.include_inverses) {
        for (const auto& f : fs) {
            CMatrix ainv(f.n, f.n);
            if (!try_exact_inverse(f.A, ainv)) ainv = float_inverse(f.A);
            CVector b(f.n);
            CVector t = ainv.apply(f.a);
            for (std::size_t i = 0; i < f.n; ++i) b[i] = -t[i];
            family.emplace_back(std::move(ainv), std::move(b));
        }
    }

    // seed only permutes generator application order; expansion is otherwise
    // a deterministic best-first search
    std::vector<std::size_t> order(family.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::mt19937_64 rng(cfg.seed);
    std::shuffle(order.begin(), order.end(), rng);

    struct Node {
        std::size_t idx;      // into points
        std::size_t depth;
        double dist;          // how far outside the box; 0 = inside
        std::size_t seq;      // FIFO tie-break
    };
    auto later = [](const Node& a, const Node& b) {
        if (a.dist != b.dist) return a.dist > b.dist;
        return a.seq > b.seq;
    };
    std::priority_queue<Node, std::vector<Node>, decltype(later)> frontier(later);

    OrbitSample out;
    std::unordered_set<std::string> seen;
    std::unordered_map<std::string, int> cell_visits;  // novelty pressure
    std::size_t seq = 0;
    auto cell_key = [&](const std::vector<std::complex<double>>& x) {
        std::string key;
        char buf[32];
        for (const auto& z : x)
            for (double c : {z.real(), z.imag()}) {
                auto cell = static_cast<long>((c + cfg.box_radius) /
                                              (2 * cfg.box_radius) *
                                              static_cast<double>(cfg.grid));
                std::snprintf(buf, sizeof buf, "%ld;", cell);
                key += buf;
            }
        return key;
    };
    auto push_state = [&](std::vector<std::complex<double>> x, std::size_t depth) {
        if (max_norm(x) > kEscapeNorm) {
            ++out.escaped;
            return;
        }
        if (!seen.insert(state_key(x)).second) return;
        double dist = std::max(0.0, max_norm(x) - cfg.box_radius);
        // expansion order: closest to the box first, then least-visited cell
        // first, so the search keeps probing fresh regions
        double priority = dist + std::min(cell_visits[cell_key(x)]++, 1000);
        out.points.push_back(std::move(x));
        frontier.push({out.points.size() - 1, depth, priority, seq++});
    };

    push_state(start, 0);
    while (!frontier.empty() && out.points.size() < cfg.max_samples) {
        Node node = frontier.top();
        frontier.pop();
        if (node.depth >= cfg.max_word_length) continue;
        std::vector<std::complex<double>> x = out.points[node.idx];
        for (std::size_t k : order) {
            if (out.points.size() >= cfg.max_samples) break;
            push_state(apply_float(family[k], x), node.depth + 1);
        }
    }
    return out;
}

namespace {

CoverageCheckpoint coverage_prefix(const std::vector<std::vector<std::complex<double>>>& points,
                                   const SimConfig& cfg, std::size_t budget,
                                   std::size_t& cells_hit_out, double cells_total) {
    const std::size_t count = std::min(budget, points.size());
    const double r = cfg.box_radius;
    std::unordered_set<std::string> hit;
    std::size_t outside = 0;
    for (std::size_t p = 0; p < count; ++p) {
        const auto& x = points[p];
        bool in = true;
        std::string key;
        char buf[32];
        for (const auto& z : x) {
            for (double c : {z.real(), z.imag()}) {
                if (std::abs(c) > r) { in = false; break; }
                auto cell = static_cast<long>((c + r) / (2 * r) * static_cast<double>(cfg.grid));
                cell = std::min<long>(cell, static_cast<long>(cfg.grid) - 1);
                std::snprintf(buf, sizeof buf, "%ld;", cell);
                key += buf;
            }
            if (!in) break;
        }
        if (!in) { ++outside; continue; }
        hit.insert(key);
    }
    cells_hit_out = hit.size();
    CoverageCheckpoint cp;
    cp.budget = budget;
    cp.points = count;
    cp.coverage = cells_total > 0 ? static_cast<double>(hit.size()) / cells_total : 0.0;
    cp.escape_fraction = count ? static_cast<double>(outside) / static_cast<double>(count) : 0.0;
    return cp;
}

}  // namespace

CoverageResult coverage(const std::vector<std::vector<std::complex<double>>>& points,
                        const SimConfig& cfg) {
    CoverageResult out;
    const std::size_t n = points.empty() ? cfg.start.size() : points.front().size();
    out.cells_total = std::pow(static_cast<double>(cfg.grid), static_cast<double>(2 * n));
    out.points_sampled = points.size();
    std::vector<std::size_t> budgets = cfg.checkpoints;
    if (budgets.empty()) budgets = {1000, 10000, cfg.max_samples};
    std::sort(budgets.begin(), budgets.end());
    budgets.erase(std::unique(budgets.begin(), budgets.end()), budgets.end());
    std::size_t hits = 0;
    for (std::size_t b : budgets) out.checkpoints.push_back(coverage_prefix(points, cfg, b, hits, out.cells_total));
    CoverageCheckpoint full = coverage_prefix(points, cfg, points.size(), hits, out.cells_total);
    out.cells_hit = hits;
    out.escape_fraction = full.escape_fraction;
    return out;
}

CoverageResult run_simulation(const std::vector<AffineMap>& fs, const SimConfig& cfg) {
    OrbitSample sample = sample_orbit(fs, cfg);
    CoverageResult out = coverage(sample.points, cfg);
    // escaped points never entered the stored set; fold them into the
    // reported escape fraction
    std::size_t total = sample.points.size() + sample.escaped;
    if (total)
        out.escape_fraction =
            (out.escape_fraction * static_cast<double>(sample.points.size()) +
             static_cast<double>(sample.escaped)) /
            static_cast<double>(total);
    return out;
}

std::string coverage_csv(const CoverageResult& result) {
    std::ostringstream os;
    os << "budget,points,coverage,escape_fraction\n";
    for (const auto& cp : result.checkpoints)
        os << cp.budget << ',' << cp.points << ',' << cp.coverage << ','
           << cp.escape_fraction << '\n';
    return os.str();
}

}  // namespace hyperaff
