#include "djet/fuchsian.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <string>

namespace djet {

namespace {

using lcplx = std::complex<long double>;

struct LPair {
    lcplx a, b;
};

LPair widen(const Mobius& g) {
    return {lcplx(g.alpha().real(), g.alpha().imag()), lcplx(g.beta().real(), g.beta().imag())};
}

cplx narrow(lcplx v) { return {static_cast<double>(v.real()), static_cast<double>(v.imag())}; }

LPair invert(const LPair& g) { return {std::conj(g.a), -g.b}; }

// Extended-precision SU(1,1) product, renormalized each step so words carry
// no determinant drift.
LPair compose_ld(const LPair& g, const LPair& h) {
    LPair r{g.a * h.a + g.b * std::conj(h.b), g.a * h.b + g.b * std::conj(h.a)};
    long double s = std::sqrt(std::norm(r.a) - std::norm(r.b));
    r.a /= s;
    r.b /= s;
    return r;
}

void canonicalize_ld(LPair& g) {
    lcplx lead = (std::abs(g.a) > 1e-9L) ? g.a : g.b;
    if (lead.real() < 0.0L || (lead.real() == 0.0L && lead.imag() < 0.0L)) {
        g.a = -g.a;
        g.b = -g.b;
    }
}

std::string fmt_sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

std::string word_str(const std::vector<int>& w) {
    std::string s;
    for (int v : w) {
        if (!s.empty()) s += ' ';
        s += std::to_string(v);
    }
    return s;
}

LPair letter(const GeneratorSet& gens, int signed_index) {
    int i = std::abs(signed_index) - 1;
    if (signed_index == 0 || i >= static_cast<int>(gens.generators.size()))
        throw std::invalid_argument("relation word: generator index " +
                                    std::to_string(signed_index) + " out of range");
    LPair p = widen(gens.generators[static_cast<size_t>(i)]);
    return signed_index > 0 ? p : invert(p);
}

}  // namespace

void GeneratorSet::validate(double tol) const {
    if (generators.empty()) throw std::invalid_argument("GeneratorSet: no generators");
    for (size_t r = 0; r < relations.size(); ++r) {
        if (relations[r].empty())
            throw std::invalid_argument("GeneratorSet: relation " + std::to_string(r + 1) +
                                        " is empty");
        LPair acc{lcplx(1.0L, 0.0L), lcplx(0.0L, 0.0L)};
        for (int idx : relations[r]) acc = compose_ld(acc, letter(*this, idx));
        canonicalize_ld(acc);
        Mobius m = Mobius::from_unit_determinant(narrow(acc.a), narrow(acc.b));
        double res = distance(m, Mobius());
        if (!(res <= tol))
            throw std::domain_error("GeneratorSet: relation " + std::to_string(r + 1) +
                                    " fails to close: residual " + fmt_sci(res));
    }
}

GeneratorSet octagon_generators() {
    // Regular octagon side pairings: |alpha| = 1 + sqrt(2) (real), |beta|^2 =
    // |alpha|^2 - 1 = 2 + 2 sqrt(2), beta directions at multiples of pi/4.
    long double s2 = std::sqrt(2.0L);
    long double a = 1.0L + s2;
    long double bm = std::sqrt(2.0L + 2.0L * s2);
    long double c = std::sqrt(0.5L);  // cos/sin of pi/4
    const long double dir[4][2] = {{1.0L, 0.0L}, {c, c}, {0.0L, 1.0L}, {-c, c}};
    GeneratorSet gens;
    for (auto& d : dir)
        gens.generators.emplace_back(cplx(static_cast<double>(a), 0.0),
                                     cplx(static_cast<double>(bm * d[0]),
                                          static_cast<double>(bm * d[1])));
    gens.relations = {{1, -2, 3, -4, -1, 2, -3, 4}};
    gens.validate();
    return gens;
}

std::span<const Mobius> GroupBall::shell(std::size_t l) const {
    if (l + 1 >= offsets_.size()) throw std::out_of_range("GroupBall::shell");
    return {elems_.data() + offsets_[l], offsets_[l + 1] - offsets_[l]};
}

GroupBall enumerate_ball(const GeneratorSet& gens, int L) {
    if (L < 0) throw std::domain_error("enumerate_ball: L must be >= 0");
    gens.validate();

    GroupBall ball;
    std::vector<LPair> lds;
    std::vector<std::vector<int>> words;
    std::multimap<double, size_t> by_re_alpha;

    auto store = [&](const LPair& p, std::vector<int> word) {
        ball.elems_.push_back(Mobius::from_unit_determinant(narrow(p.a), narrow(p.b)));
        lds.push_back(p);
        by_re_alpha.emplace(ball.elems_.back().alpha().real(), ball.elems_.size() - 1);
        words.push_back(std::move(word));
    };

    store(LPair{lcplx(1.0L, 0.0L), lcplx(0.0L, 0.0L)}, {});
    ball.offsets_ = {0, 1};

    size_t k = gens.generators.size();
    std::vector<LPair> letters;
    std::vector<int> labels;
    for (size_t i = 0; i < k; ++i) {
        letters.push_back(widen(gens.generators[i]));
        labels.push_back(static_cast<int>(i) + 1);
    }
    for (size_t i = 0; i < k; ++i) {
        letters.push_back(invert(letters[i]));
        labels.push_back(-(static_cast<int>(i) + 1));
    }

    for (int l = 1; l <= L; ++l) {
        size_t lo = ball.offsets_[static_cast<size_t>(l) - 1];
        size_t hi = ball.offsets_[static_cast<size_t>(l)];
        for (size_t li = 0; li < letters.size(); ++li) {
            for (size_t pi = lo; pi < hi; ++pi) {
                LPair cand = compose_ld(letters[li], lds[pi]);
                canonicalize_ld(cand);
                cplx ca = narrow(cand.a), cb = narrow(cand.b);
                double dmin = 1e300;
                size_t jmin = 0;
                auto it = by_re_alpha.lower_bound(ca.real() - 1e-6);
                auto end = by_re_alpha.upper_bound(ca.real() + 1e-6);
                for (; it != end; ++it) {
                    const Mobius& e = ball.elems_[it->second];
                    double d = std::max(std::abs(ca - e.alpha()), std::abs(cb - e.beta()));
                    if (d < dmin) {
                        dmin = d;
                        jmin = it->second;
                    }
                }
                if (dmin <= 1e-12) continue;  // duplicate word for a stored element
                if (dmin <= 1e-9) {
                    std::vector<int> w = words[pi];
                    w.insert(w.begin(), labels[li]);
                    throw discreteness_error(
                        "enumerate_ball: ambiguous dedup: word [" + word_str(w) + "] lands " +
                        fmt_sci(dmin) + " from word [" + word_str(words[jmin]) +
                        "]; group may not be discrete");
                }
                std::vector<int> w = words[pi];
                w.insert(w.begin(), labels[li]);
                store(cand, std::move(w));
            }
        }
        ball.offsets_.push_back(ball.elems_.size());
    }

    for (size_t i = 1; i < ball.elems_.size(); ++i)
        if (!(std::abs(2.0 * ball.elems_[i].alpha().real()) > 2.0)) ++ball.non_hyperbolic_;
    return ball;
}

namespace {

SeriesTerm sum_over_ball(const GroupBall& ball, int N,
                         const std::function<cplx(const Mobius&)>& term) {
    SeriesTerm out;
    out.convergence_warning = N < 2;
    cplx sum = 0.0;
    double tail = 0.0;
    size_t last = ball.shell_count() - 1;
    for (size_t l = 0; l < ball.shell_count(); ++l) {
        for (const Mobius& g : ball.shell(l)) {
            cplx v = term(g);
            sum += v;
            if (l == last) tail += std::abs(v);
        }
    }
    out.value = sum;
    out.tail_indicator = tail;
    return out;
}

}  // namespace

SeriesTerm poincare_density(const GroupBall& ball, int N, const DiskPoint& tau) {
    if (N < 0) throw std::domain_error("poincare_density: N must be >= 0");
    cplx t = tau.value();
    return sum_over_ball(ball, N, [&](const Mobius& g) { return cpow_int(g.derivative(t), N); });
}

SeriesTerm pair_series(const GroupBall& ball, int N, const PointPair& p) {
    if (N < 0) throw std::domain_error("pair_series: N must be >= 0");
    cplx z = p.z.value(), w = p.w.value();
    return sum_over_ball(ball, N, [&](const Mobius& g) {
        return cpow_int(g.apply_raw(z) - g.apply_raw(w), N);
    });
}

std::vector<double> shell_magnitudes(const GroupBall& ball, int N, const DiskPoint& tau) {
    if (N < 0) throw std::domain_error("shell_magnitudes: N must be >= 0");
    cplx t = tau.value();
    std::vector<double> out(ball.shell_count(), 0.0);
    for (size_t l = 0; l < ball.shell_count(); ++l)
        for (const Mobius& g : ball.shell(l)) out[l] += std::abs(cpow_int(g.derivative(t), N));
    return out;
}

}  // namespace djet
