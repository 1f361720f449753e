#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "lw/fan.hpp"

namespace lw {

// Conewise polynomials on a simplicial fan, in the Stanley-Reisner basis of
// Courant-function monomials: t_j is linear on each cone, 1 on ray j and 0 on
// the other rays.  A monomial is a sorted multiset of ray indices whose
// support is a cone.  Degrees here are polynomial degrees; the cohomological
// degree is twice that.
class ConewiseRing {
public:
    using Monomial = std::vector<std::uint8_t>;

    struct Section {
        int deg = 0;
        Vec coeffs;
    };

    ConewiseRing(int dim, std::vector<Vec> rays, const Refinement& ref, int max_degree);

    int dim() const { return dim_; }
    int max_degree() const { return max_deg_; }
    std::size_t num_rays() const { return rays_.size(); }
    const std::vector<Vec>& rays() const { return rays_; }
    const Refinement& refinement() const { return ref_; }

    std::size_t size(int d) const { return monos_[d].size(); }
    const std::vector<Monomial>& monomials(int d) const { return monos_[d]; }
    Mask support(int d, std::size_t i) const { return supp_[d][i]; }
    std::optional<std::size_t> index(const Monomial& m) const;
    // Degree-d monomials whose support lies in the given ray set.
    std::vector<std::size_t> indices_within(int d, Mask rays) const;

    Section zero(int d) const { return {d, Vec(size(d))}; }
    Section one() const;
    // The linear function with the given values on the rays.
    Section linear(std::span<const Rat> ray_values) const;
    // Global linear coordinate k of the ambient space.
    Section coordinate(int k) const;

    Section multiply(const Section& a, const Section& b) const;
    Section multiply_linear(const Section& a, std::span<const Rat> ray_values) const;
    Vec multiply_linear(int d, std::span<const Rat> a, std::span<const Rat> ray_values) const;
    // Zero out the monomials not supported in `rays`.
    Section restrict_to(const Section& a, Mask rays) const;

    // Evaluation map on degree dim() sections:
    // sum over maximal cones tau of f_tau / g_tau at a generic point.
    Rat evaluate(const Section& f) const;
    const Vec& evaluation_functional() const { return eps_; }
    const Vec& probe_point() const { return probe_; }
    // The polynomial of section f on maximal cone `tau` at point y.
    Rat value_on_cone(const Section& f, std::size_t tau, std::span<const Rat> y) const;

private:
    int dim_;
    int max_deg_;
    std::vector<Vec> rays_;
    Refinement ref_;
    std::vector<std::vector<Monomial>> monos_;
    std::vector<std::vector<Mask>> supp_;
    std::vector<std::map<Monomial, std::size_t>> index_;
    // up_[d][i * rays + j] = index of monomial i times t_j in degree d+1, or -1
    std::vector<std::vector<long>> up_;
    Vec eps_;
    Vec probe_;
};

}  // namespace lw
