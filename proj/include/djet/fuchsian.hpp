#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "djet/mobius.hpp"

namespace djet {

// Two distinct words of bounded length landed closer than the dedup metric
// can distinguish (canonical distance in (1e-12, 1e-9]); the generator set is
// suspect of not generating a discrete group.
class discreteness_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Generators of a subgroup of PSU(1,1) plus optional defining relation words.
// Words are 1-based signed generator indices: k means generator k, -k its
// inverse, applied left to right as written.
struct GeneratorSet {
    std::vector<Mobius> generators;
    std::vector<std::vector<int>> relations;

    // Checks every relation word composes to the identity within tol
    // (canonical distance). Throws std::domain_error naming the failing
    // relation index and the measured residual.
    void validate(double tol = 1e-9) const;
};

// Side-pairing generators of the regular hyperbolic octagon (genus-2 surface):
// alpha = 1 + sqrt(2), beta_k = sqrt(2 + 2 sqrt(2)) e^{ik pi/4}, k = 0..3,
// with the single defining relation validated at construction.
GeneratorSet octagon_generators();

// Deduplicated ball of group elements of word length <= L, grouped by shell.
// Shell 0 is the identity; shell l holds elements whose shortest enumerated
// word has length l. Element order is deterministic (shell-major, then
// generator-lexicographic first-discovery order).
class GroupBall {
  public:
    const std::vector<Mobius>& elements() const { return elems_; }
    std::size_t size() const { return elems_.size(); }
    int word_length() const { return static_cast<int>(offsets_.size()) - 2; }
    std::size_t shell_count() const { return offsets_.size() - 1; }
    std::span<const Mobius> shell(std::size_t l) const;
    // Non-identity elements with |2 Re alpha| <= 2: not hyperbolic, which a
    // torsion-free Fuchsian ball should never contain. Flagged, not fatal.
    std::size_t non_hyperbolic_count() const { return non_hyperbolic_; }

  private:
    friend GroupBall enumerate_ball(const GeneratorSet& gens, int L);
    std::vector<Mobius> elems_;
    std::vector<std::size_t> offsets_;  // shell l = [offsets_[l], offsets_[l+1])
    std::size_t non_hyperbolic_ = 0;
};

// Breadth-first enumeration with dedup. Compositions run in extended
// precision along each word and are rounded once on storage, keeping
// duplicate words within ~1e-13 of each other while distinct octagon elements
// stay O(1) apart. Candidates within canonical distance 1e-12 of a stored
// element are dropped as duplicates; a nearest distance in (1e-12, 1e-9]
// throws discreteness_error. Validates gens first.
GroupBall enumerate_ball(const GeneratorSet& gens, int L);

// A truncated group series value plus truncation accounting: tail_indicator
// is the magnitude sum over the outermost shell, and convergence_warning is
// set for N < 2 where the full series need not converge.
struct SeriesTerm {
    cplx value;
    double tail_indicator = 0.0;
    bool convergence_warning = false;
};

// Sum over the ball of derivative(g, tau)^N: the truncated Poincare density
// of weight N at tau.
SeriesTerm poincare_density(const GroupBall& ball, int N, const DiskPoint& tau);

// Sum over the ball of (g(z) - g(w))^N.
SeriesTerm pair_series(const GroupBall& ball, int N, const PointPair& p);

// Per-shell magnitude sums of derivative(g, tau)^N; decaying shells witness
// convergence of the full series.
std::vector<double> shell_magnitudes(const GroupBall& ball, int N, const DiskPoint& tau);

}  // namespace djet
