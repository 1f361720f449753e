#include "lw/conewise_ring.hpp"

#include <algorithm>
#include <functional>

#include "lw/error.hpp"

namespace lw {

ConewiseRing::ConewiseRing(int dim, std::vector<Vec> rays, const Refinement& ref, int max_degree)
    : dim_(dim), max_deg_(max_degree), rays_(std::move(rays)), ref_(ref) {
    if (max_deg_ < 0) fail(ErrorKind::Precondition, "negative truncation degree");
    if (rays_.size() > 255) fail(ErrorKind::Precondition, "too many rays");
    monos_.assign(max_deg_ + 1, {});
    supp_.assign(max_deg_ + 1, {});
    index_.assign(max_deg_ + 1, {});

    int nr = static_cast<int>(rays_.size());
    Monomial cur;
    std::function<void(int, Mask)> grow = [&](int first, Mask supp) {
        int d = static_cast<int>(cur.size());
        index_[d].emplace(cur, monos_[d].size());
        monos_[d].push_back(cur);
        supp_[d].push_back(supp);
        if (d == max_deg_) return;
        for (int j = first; j < nr; ++j) {
            Mask s = supp | (Mask{1} << j);
            if (!ref_.contains(s)) continue;
            cur.push_back(static_cast<std::uint8_t>(j));
            grow(j, s);
            cur.pop_back();
        }
    };
    grow(0, 0);

    up_.assign(max_deg_, {});
    for (int d = 0; d < max_deg_; ++d) {
        up_[d].assign(monos_[d].size() * nr, -1);
        for (std::size_t i = 0; i < monos_[d].size(); ++i)
            for (int j = 0; j < nr; ++j) {
                Mask s = supp_[d][i] | (Mask{1} << j);
                if (!ref_.contains(s)) continue;
                Monomial m = monos_[d][i];
                m.insert(std::upper_bound(m.begin(), m.end(), static_cast<std::uint8_t>(j)),
                         static_cast<std::uint8_t>(j));
                up_[d][i * nr + j] = static_cast<long>(index_[d + 1].at(m));
            }
    }

    if (max_deg_ < dim_) return;
    // Probe at the first point of the generic sequence off every cone wall.
    std::vector<Vec> lambdas;
    for (long j = 1;; ++j) {
        if (j > 10000) fail(ErrorKind::Internal, "no generic probe point found");
        Vec p = generic_point(dim_, j);
        lambdas.clear();
        bool ok = true;
        for (const auto& inv : ref_.inverse) {
            Vec lam = inv * p;
            if (std::any_of(lam.begin(), lam.end(), [](const Rat& x) { return x.is_zero(); })) ok = false;
            lambdas.push_back(std::move(lam));
        }
        if (ok) {
            probe_ = p;
            break;
        }
    }
    eps_.assign(size(dim_), Rat(0));
    for (std::size_t t = 0; t < ref_.max_cones.size(); ++t) {
        Mask tau = ref_.max_cones[t];
        auto rl = mask_to_list(tau);
        Rat g = ref_.abs_det[t];
        for (const auto& l : lambdas[t]) g *= l;
        for (std::size_t i : indices_within(dim_, tau)) {
            Rat v = 1;
            for (auto r : monos_[dim_][i]) {
                auto pos = std::find(rl.begin(), rl.end(), static_cast<int>(r)) - rl.begin();
                v *= lambdas[t][pos];
            }
            eps_[i] += v / g;
        }
    }
}

std::optional<std::size_t> ConewiseRing::index(const Monomial& m) const {
    if (static_cast<int>(m.size()) > max_deg_) return std::nullopt;
    auto it = index_[m.size()].find(m);
    if (it == index_[m.size()].end()) return std::nullopt;
    return it->second;
}

std::vector<std::size_t> ConewiseRing::indices_within(int d, Mask rays) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < supp_[d].size(); ++i)
        if (subset_of(supp_[d][i], rays)) out.push_back(i);
    return out;
}

ConewiseRing::Section ConewiseRing::one() const {
    Section s = zero(0);
    s.coeffs[0] = 1;
    return s;
}

ConewiseRing::Section ConewiseRing::linear(std::span<const Rat> ray_values) const {
    if (max_deg_ < 1) fail(ErrorKind::Precondition, "truncation below degree 1");
    Section s = zero(1);
    for (std::size_t j = 0; j < rays_.size(); ++j) s.coeffs[up_[0][j]] = ray_values[j];
    return s;
}

ConewiseRing::Section ConewiseRing::coordinate(int k) const {
    Vec vals(rays_.size());
    for (std::size_t j = 0; j < rays_.size(); ++j) vals[j] = rays_[j][k];
    return linear(vals);
}

ConewiseRing::Section ConewiseRing::multiply(const Section& a, const Section& b) const {
    int d = a.deg + b.deg;
    if (d > max_deg_) fail(ErrorKind::Precondition, "product exceeds the truncation degree");
    Section r = zero(d);
    for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
        if (a.coeffs[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.coeffs.size(); ++j) {
            if (b.coeffs[j].is_zero()) continue;
            Mask s = supp_[a.deg][i] | supp_[b.deg][j];
            if (!ref_.contains(s)) continue;
            Monomial m;
            std::merge(monos_[a.deg][i].begin(), monos_[a.deg][i].end(), monos_[b.deg][j].begin(),
                       monos_[b.deg][j].end(), std::back_inserter(m));
            r.coeffs[index_[d].at(m)] += a.coeffs[i] * b.coeffs[j];
        }
    }
    return r;
}

Vec ConewiseRing::multiply_linear(int d, std::span<const Rat> a, std::span<const Rat> ray_values) const {
    if (d + 1 > max_deg_) fail(ErrorKind::Precondition, "product exceeds the truncation degree");
    std::size_t nr = rays_.size();
    Vec r(size(d + 1));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (std::size_t j = 0; j < nr; ++j) {
            if (ray_values[j].is_zero()) continue;
            long t = up_[d][i * nr + j];
            if (t >= 0) r[t] += a[i] * ray_values[j];
        }
    }
    return r;
}

ConewiseRing::Section ConewiseRing::multiply_linear(const Section& a, std::span<const Rat> ray_values) const {
    return {a.deg + 1, multiply_linear(a.deg, a.coeffs, ray_values)};
}

ConewiseRing::Section ConewiseRing::restrict_to(const Section& a, Mask rays) const {
    Section r = a;
    for (std::size_t i = 0; i < r.coeffs.size(); ++i)
        if (!subset_of(supp_[a.deg][i], rays)) r.coeffs[i] = 0;
    return r;
}

Rat ConewiseRing::evaluate(const Section& f) const {
    if (f.deg != dim_) fail(ErrorKind::Precondition, "evaluation needs a section of top degree");
    return dot(eps_, f.coeffs);
}

Rat ConewiseRing::value_on_cone(const Section& f, std::size_t tau, std::span<const Rat> y) const {
    Mask t = ref_.max_cones[tau];
    auto rl = mask_to_list(t);
    Vec lam = ref_.inverse[tau] * y;
    Rat total;
    for (std::size_t i = 0; i < f.coeffs.size(); ++i) {
        if (f.coeffs[i].is_zero() || !subset_of(supp_[f.deg][i], t)) continue;
        Rat v = f.coeffs[i];
        for (auto r : monos_[f.deg][i]) v *= lam[std::find(rl.begin(), rl.end(), static_cast<int>(r)) - rl.begin()];
        total += v;
    }
    return total;
}

}  // namespace lw
