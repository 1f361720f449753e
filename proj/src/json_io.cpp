#include "lw/json_io.hpp"

#include <fstream>
#include <limits>
#include <sstream>

#include "lw/error.hpp"

namespace lw {

json rat_to_json(const Rat& r) { return r.str(); }

Rat rat_from_json(const json& j) {
    if (j.is_number_integer()) return Rat(j.get<long long>());
    if (j.is_string()) return Rat::parse(j.get<std::string>());
    fail(ErrorKind::InvalidInput, "coordinate must be an integer or a \"p/q\" string, got " + j.dump());
}

json polytope_to_json(const Polytope& p, const std::string& id) {
    json j;
    if (!id.empty()) j["id"] = id;
    j["dim"] = p.ambient_dim();
    json vs = json::array();
    for (const auto& v : p.vertices()) {
        json row = json::array();
        for (const auto& x : v) row.push_back(rat_to_json(x));
        vs.push_back(std::move(row));
    }
    j["vertices"] = std::move(vs);
    return j;
}

PolytopeInput polytope_from_json(const json& j) {
    if (!j.is_object()) fail(ErrorKind::InvalidInput, "polytope must be a JSON object");
    for (const auto& [k, v] : j.items())
        if (k != "id" && k != "dim" && k != "vertices") fail(ErrorKind::InvalidInput, "unknown polytope field '" + k + "'");
    if (!j.contains("dim") || !j["dim"].is_number_integer()) fail(ErrorKind::InvalidInput, "polytope needs an integer 'dim'");
    if (!j.contains("vertices") || !j["vertices"].is_array()) fail(ErrorKind::InvalidInput, "polytope needs a 'vertices' array");
    int dim = j["dim"].get<int>();
    if (dim < 0) fail(ErrorKind::InvalidInput, "negative dimension");
    std::vector<Vec> pts;
    for (const auto& row : j["vertices"]) {
        if (!row.is_array() || static_cast<int>(row.size()) != dim)
            fail(ErrorKind::InvalidInput, "vertex " + row.dump() + " does not have " + std::to_string(dim) + " coordinates");
        Vec v;
        for (const auto& x : row) v.push_back(rat_from_json(x));
        pts.push_back(std::move(v));
    }
    PolytopeInput in;
    if (j.contains("id")) {
        if (!j["id"].is_string()) fail(ErrorKind::InvalidInput, "'id' must be a string");
        in.id = j["id"].get<std::string>();
    }
    in.polytope = Polytope(dim, std::move(pts));
    return in;
}

json read_json_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) fail(ErrorKind::InvalidInput, "cannot open " + path);
    try {
        return json::parse(f);
    } catch (const json::parse_error& e) {
        fail(ErrorKind::InvalidInput, path + ": " + e.what());
    }
}

PolytopeInput read_polytope_file(const std::string& path) {
    auto in = polytope_from_json(read_json_file(path));
    if (in.id.empty()) {
        auto slash = path.find_last_of('/');
        std::string base = slash == std::string::npos ? path : path.substr(slash + 1);
        auto dot = base.find_last_of('.');
        in.id = dot == std::string::npos ? base : base.substr(0, dot);
    }
    return in;
}

json signature_to_json(const Signature& s) { return json::array({s.pos, s.neg, s.zero}); }

json lattice_to_json(const FaceLattice& lat) {
    json j;
    j["dim"] = lat.dim();
    j["f_vector"] = lat.f_vector();
    json by_dim = json::array();
    for (int d = -1; d <= lat.dim(); ++d) {
        json level = json::array();
        for (int id : lat.faces_of_dim(d)) level.push_back({{"id", id}, {"vertices", lat.face(id).vertices}});
        by_dim.push_back({{"dim", d}, {"faces", std::move(level)}});
    }
    j["faces"] = std::move(by_dim);
    return j;
}

json fan_to_json(const NormalFan& nf) {
    const Fan& fan = nf.fan;
    json j;
    j["dim"] = fan.dim();
    json rays = json::array();
    for (const auto& r : fan.rays()) {
        json row = json::array();
        for (const auto& x : r) row.push_back(x.num().get_si());  // primitive integer rays
        rays.push_back(std::move(row));
    }
    j["rays"] = std::move(rays);
    json cones = json::array();
    for (std::size_t c = 0; c < fan.size(); ++c) {
        json cj{{"id", c}, {"dim", fan.cone(c).dim}, {"rays", mask_to_list(fan.cone(c).rays)}, {"face", fan.cone(c).face},
                {"simplicial", fan.cone_simplicial(static_cast<int>(c))}};
        cones.push_back(std::move(cj));
    }
    j["cones"] = std::move(cones);
    json psi = json::array();
    for (int c : fan.max_cones()) {
        json v = json::array();
        for (const auto& x : nf.psi[c]) v.push_back(rat_to_json(x));
        psi.push_back({{"cone", c}, {"psi", std::move(v)}});
    }
    j["psi"] = std::move(psi);
    json pr = json::array();
    for (const auto& x : nf.psi_on_rays) pr.push_back(rat_to_json(x));
    j["psi_on_rays"] = std::move(pr);
    return j;
}

json hvec_to_json(const HVec& h) { return {{"h", h.h}, {"g", h.g}}; }

json tag_to_json(const SimpleTag& t) {
    json j = json::object();
    for (auto [m, c] : t) j[std::to_string(m)] = c;
    return j;
}

json module_to_json(const HRModule& w) {
    json j;
    j["m"] = w.m;
    json dims = json::object();
    for (int k = -w.m; k <= w.m; ++k) dims[std::to_string(k)] = w.dim(k);
    j["dims"] = std::move(dims);
    json lr = json::object();
    for (int k = -w.m; k <= w.m - 2; ++k)
        if (w.dim(k) > 0) lr[std::to_string(k)] = rank(w.L(k));
    j["lefschetz_ranks"] = std::move(lr);
    auto rep = check_hr_module(w);
    json sig = json::object();
    for (const auto& e : rep.entries) sig[std::to_string(e.k)] = signature_to_json(e.signature);
    j["primitive_signatures"] = std::move(sig);
    j["hr_module"] = rep.ok;
    if (rep.ok) j["decomposition"] = tag_to_json(decompose(w));
    return j;
}

json hlt_to_json(const HltReport& r) {
    json j = json::object();
    for (const auto& e : r.entries)
        j[std::to_string(e.k)] = {{"rows", e.rows}, {"cols", e.cols}, {"rank", e.rank}, {"ok", e.ok}};
    return j;
}

json hrr_to_json(const HrrReport& r) {
    json sig = json::object(), eq = json::object(), def = json::object(), prim = json::object(), dec = json::object();
    for (const auto& e : r.entries) {
        std::string k = std::to_string(e.k);
        sig[k] = signature_to_json(e.full);
        eq[k] = {{"lhs", e.lhs}, {"rhs", e.rhs}, {"ok", e.equation}};
        def[k] = e.definite;
        prim[k] = {{"dim", e.primitive_dim}, {"expected_sign", e.expected_sign}, {"signature", signature_to_json(e.primitive)}};
        dec[k] = e.decomposition;
    }
    return {{"signatures", sig}, {"hr_equation", eq}, {"hrr_definite", def}, {"primitive", prim},
            {"orthogonal_decomposition", dec}, {"ok", r.ok()}};
}

json ih_report(const std::string& id, const CihModel& m, const HltReport& hlt, const HrrReport& hrr) {
    json j;
    j["polytope_id"] = id;
    j["n"] = m.n();
    j["betti"] = m.betti();
    json h = json::object();
    for (const auto& e : hlt.entries) h[std::to_string(e.k)] = e.ok;
    j["hlt"] = std::move(h);
    json hr = hrr_to_json(hrr);
    j["signatures"] = hr["signatures"];
    j["hr_equation"] = hr["hr_equation"];
    j["hrr_definite"] = hr["hrr_definite"];
    j["hlt_ok"] = hlt.ok;
    j["hrr_ok"] = hlt.ok && hrr.ok();
    return j;
}

json stout_to_json(const FaceLattice& lat, const StoutReport& r) {
    json faces = json::array();
    for (int f : r.normally_stout_faces)
        faces.push_back({{"id", f}, {"vertices", lat.face(f).vertices}, {"codim", lat.dim() - lat.face(f).dim}});
    json j{{"defect", r.defect}, {"normally_stout_faces", std::move(faces)}};
    if (r.minimal_ns_face) {
        int f = *r.minimal_ns_face;
        j["minimal"] = {{"id", f}, {"vertices", lat.face(f).vertices}, {"dim", lat.face(f).dim},
                        {"normally_trivial", is_normally_trivial(lat, f).trivial},
                        {"simple", is_simple(lat.interval_below(f))}};
    } else {
        j["minimal"] = nullptr;
    }
    return j;
}

json cutoff_to_json(const std::vector<CutoffStep>& trace) {
    json steps = json::array();
    for (const auto& s : trace)
        steps.push_back({{"face", s.face}, {"mu_before", s.mu_before}, {"mu_after", s.mu_after},
                         {"residual_f_vector", s.residual.lattice().f_vector()}, {"residual", polytope_to_json(s.residual)}});
    return {{"steps", std::move(steps)}, {"length", trace.size()}};
}

json pyramid_to_json(const PyramidReport& r) {
    return {{"base_facet", r.base_facet},   {"apex", r.apex},
            {"betti_pyramid", r.betti_pyramid}, {"betti_base", r.betti_base},
            {"betti_ok", r.betti_ok},       {"top_primitive_zero", r.top_primitive_zero},
            {"hrr_base", r.hrr_base},       {"hrr_pyramid", r.hrr_pyramid},
            {"ok", r.ok()}};
}

json kunneth_to_json(const KunnethReport& r) {
    return {{"betti_simple", r.betti_simple}, {"betti_other", r.betti_other},
            {"betti_product", r.betti_product}, {"convolution", r.convolution},
            {"convolution_ok", r.convolution_ok}, {"hr_equation", r.hr_equation},
            {"modules_hr", r.modules_hr},     {"tensor_decomposition", tag_to_json(r.tensor_tag)},
            {"product_decomposition", tag_to_json(r.product_tag)}, {"module_ok", r.module_ok},
            {"ok", r.ok()}};
}

json gluing_to_json(const GluingReport& r) {
    return {{"betti_p", r.betti_p},         {"betti_piece1", r.betti_piece1}, {"betti_piece2", r.betti_piece2},
            {"betti_cut_facet", r.betti_facet}, {"lhs", r.lhs},               {"rhs", r.rhs},
            {"identity", r.identity},       {"hrr_p", r.hrr_p},               {"hrr_piece1", r.hrr_piece1},
            {"hrr_piece2", r.hrr_piece2},   {"hrr_cut_facet", r.hrr_facet},   {"ok", r.ok()}};
}

json deformation_to_json(const DeformationReport& r) {
    json samples = json::array();
    for (const auto& s : r.samples) {
        json sig = json::array();
        for (const auto& g : s.signatures) sig.push_back(signature_to_json(g));
        samples.push_back({{"t", rat_to_json(s.t)}, {"f_vector", s.f_vector}, {"betti", s.betti},
                           {"signatures", std::move(sig)}, {"hlt", s.hlt}});
    }
    json j{{"face", r.face},
           {"face_dim", r.face_dim},
           {"samples", std::move(samples)},
           {"type_constant", r.type_constant},
           {"product_at_zero", r.product_at_zero},
           {"betti_constant", r.betti_constant},
           {"signatures_constant", r.signatures_constant},
           {"hlt_positive", r.hlt_positive},
           {"germ_facets_trivial", r.germ_facets_trivial}};
    if (r.pyramid) j["pyramid"] = pyramid_to_json(*r.pyramid);
    j["ok"] = r.ok();
    return j;
}

namespace {

bool is_flat(const json& j) {
    if (!j.is_array()) return false;
    for (const auto& x : j)
        if (x.is_structured()) return false;
    return true;
}

void render(const json& j, int indent, std::ostringstream& os) {
    std::string pad(indent, ' ');
    if (j.is_object()) {
        for (const auto& [k, v] : j.items()) {
            if (v.is_structured() && !is_flat(v)) {
                os << pad << k << ":\n";
                render(v, indent + 2, os);
            } else {
                os << pad << k << ": " << v.dump() << "\n";
            }
        }
    } else if (j.is_array()) {
        std::size_t i = 0;
        for (const auto& v : j) {
            if (v.is_structured() && !is_flat(v)) {
                os << pad << "- [" << i << "]\n";
                render(v, indent + 2, os);
            } else {
                os << pad << "- " << v.dump() << "\n";
            }
            ++i;
        }
    } else {
        os << pad << j.dump() << "\n";
    }
}

}  // namespace

std::string render_text(const json& j) {
    std::ostringstream os;
    render(j, 0, os);
    return os.str();
}

}  // namespace lw
