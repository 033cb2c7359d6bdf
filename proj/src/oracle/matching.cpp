#include "dyadic/oracle/matching.hpp"

#include <string>

namespace dyadic::oracle {

namespace {

void check_size(const ExactGraph& g, std::size_t limit) {
    if (g.num_edges() > limit) {
        throw SizeError("exhaustive search supports at most " + std::to_string(limit) +
                        " edges, got " + std::to_string(g.num_edges()));
    }
}

void collect(const ExactGraph& g, std::size_t e, std::vector<bool>& used, EdgeSet& current,
             std::vector<EdgeSet>& out) {
    if (e == g.num_edges()) {
        out.push_back(current);
        return;
    }
    collect(g, e + 1, used, current, out);
    const auto& ed = g.edges()[e];
    if (!used[ed.u] && !used[ed.v]) {
        used[ed.u] = used[ed.v] = true;
        current.push_back(e);
        collect(g, e + 1, used, current, out);
        current.pop_back();
        used[ed.u] = used[ed.v] = false;
    }
}

// Weights scaled to integers by the common denominator, so the relaxation
// search adds integers only.
std::vector<Integer> scaled_weights(const ExactGraph& g, Integer& denominator) {
    denominator = 1;
    for (const auto& ed : g.edges()) {
        const Integer d = boost::multiprecision::denominator(ed.w);
        denominator = denominator / boost::multiprecision::gcd(denominator, d) * d;
    }
    std::vector<Integer> out;
    for (const auto& ed : g.edges()) {
        out.push_back(boost::multiprecision::numerator(ed.w) * denominator /
                      boost::multiprecision::denominator(ed.w));
    }
    return out;
}

struct HalfSearch {
    const ExactGraph& g;
    std::vector<Integer> w{};
    std::vector<int> load{};    // per vertex, in halves
    std::vector<int> halves{};  // per edge
    Integer value = 0;          // sum w_e * halves_e
    bool have_any = false;
    bool have_int = false;
    Integer best_any = 0;
    Integer best_int = 0;
    std::vector<int> arg_any{};
    std::vector<int> arg_int{};
    std::size_t any_count = 0;  // half-integral points attaining best_any

    void run(std::size_t e, bool integral) {
        if (e == halves.size()) {
            if (!have_any || value > best_any) {
                best_any = value;
                arg_any = halves;
                have_any = true;
                any_count = 1;
            } else if (value == best_any) {
                ++any_count;
            }
            if (integral && (!have_int || value > best_int)) {
                best_int = value;
                arg_int = halves;
                have_int = true;
            }
            return;
        }
        const auto& ed = g.edges()[e];
        for (int h = 0; h <= 2; ++h) {
            if (load[ed.u] + h > 2 || load[ed.v] + h > 2) {
                break;
            }
            load[ed.u] += h;
            load[ed.v] += h;
            halves[e] = h;
            value += w[e] * h;
            run(e + 1, integral && h != 1);
            value -= w[e] * h;
            load[ed.u] -= h;
            load[ed.v] -= h;
        }
        halves[e] = 0;
    }
};

}  // namespace

std::vector<EdgeSet> enumerate_matchings(const ExactGraph& g) {
    check_size(g, kMaxEnumerationEdges);
    std::vector<EdgeSet> out;
    std::vector<bool> used(g.num_vertices(), false);
    EdgeSet current;
    collect(g, 0, used, current, out);
    return out;
}

MwmResult max_weight_matching(const ExactGraph& g) {
    MwmResult best;
    bool first = true;
    for (const auto& m : enumerate_matchings(g)) {
        Rational w = 0;
        for (std::size_t e : m) {
            w += g.edges()[e].w;
        }
        if (first || w > best.weight) {
            best.edges = m;
            best.weight = w;
            best.maximizers = 1;
            first = false;
        } else if (w == best.weight) {
            ++best.maximizers;
        }
    }
    best.unique = best.maximizers == 1;
    return best;
}

RelaxationResult lp_relaxation_optimum(const ExactGraph& g) {
    check_size(g, kMaxRelaxationEdges);
    Integer denominator;
    HalfSearch s{g};
    s.w = scaled_weights(g, denominator);
    s.load.assign(g.num_vertices(), 0);
    s.halves.assign(g.num_edges(), 0);
    s.run(0, true);
    RelaxationResult r;
    r.integral = s.best_int == s.best_any;
    r.unique = s.any_count == 1;
    r.value = Rational(s.best_any, denominator * 2);
    const auto& arg = r.integral ? s.arg_int : s.arg_any;
    for (int h : arg) {
        r.witness.emplace_back(Integer(h), Integer(2));
    }
    return r;
}

}  // namespace dyadic::oracle
