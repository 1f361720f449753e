#include "lw/pipeline.hpp"

#include <sstream>

#include "lw/error.hpp"

namespace lw {

RunConfig config_from_json(const json& j) {
    if (!j.is_object()) fail(ErrorKind::InvalidInput, "config must be a JSON object");
    RunConfig c;
    for (const auto& [k, v] : j.items()) {
        auto need = [&](bool ok, const char* what) {
            if (!ok) fail(ErrorKind::InvalidInput, "config field '" + k + "' must be " + what);
        };
        if (k == "command") {
            need(v.is_string(), "a string");
            c.command = v.get<std::string>();
        } else if (k == "inputs") {
            need(v.is_array(), "an array of paths");
            for (const auto& x : v) {
                need(x.is_string(), "an array of paths");
                c.inputs.push_back(x.get<std::string>());
            }
        } else if (k == "out") {
            need(v.is_string(), "a string");
            c.out = v.get<std::string>();
        } else if (k == "verbosity") {
            need(v.is_number_integer(), "an integer");
            c.verbosity = v.get<int>();
        } else if (k == "max_dim") {
            need(v.is_number_integer(), "an integer");
            c.max_dim = v.get<int>();
        } else if (k == "max_vertices") {
            need(v.is_number_integer(), "an integer");
            c.max_vertices = v.get<int>();
        } else if (k == "seed") {
            need(v.is_number_unsigned() || (v.is_number_integer() && v.get<long long>() >= 0), "a non-negative integer");
            c.seed = v.get<std::uint64_t>();
        } else if (k == "t_samples") {
            if (v.is_string()) {
                c.t_samples = parse_samples(v.get<std::string>());
            } else {
                need(v.is_array(), "a list of rationals");
                c.t_samples.clear();
                for (const auto& x : v) c.t_samples.push_back(rat_from_json(x));
            }
        } else if (k == "face") {
            need(v.is_number_integer(), "an integer");
            c.face = v.get<int>();
        } else {
            fail(ErrorKind::InvalidInput, "unknown config field '" + k + "'");
        }
    }
    if (c.max_vertices > 64) fail(ErrorKind::InvalidInput, "max_vertices cannot exceed 64");
    return c;
}

json config_to_json(const RunConfig& c) {
    json t = json::array();
    for (const auto& x : c.t_samples) t.push_back(rat_to_json(x));
    json j{{"command", c.command}, {"inputs", c.inputs}, {"out", c.out},
           {"verbosity", c.verbosity}, {"max_dim", c.max_dim}, {"max_vertices", c.max_vertices},
           {"seed", c.seed}, {"t_samples", std::move(t)}};
    j["face"] = c.face ? json(*c.face) : json(nullptr);
    return j;
}

std::vector<Rat> parse_samples(const std::string& s) {
    std::vector<Rat> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto b = item.find_first_not_of(" \t");
        auto e = item.find_last_not_of(" \t");
        if (b == std::string::npos) fail(ErrorKind::InvalidInput, "empty entry in sample list '" + s + "'");
        Rat t = Rat::parse(item.substr(b, e - b + 1));
        if (t < Rat(0) || t > Rat(1)) fail(ErrorKind::InvalidInput, "sample " + t.str() + " outside [0,1]");
        out.push_back(t);
    }
    if (out.empty()) fail(ErrorKind::InvalidInput, "empty sample list");
    return out;
}

void check_resources(const Polytope& p, const RunConfig& c) {
    if (p.dim() > c.max_dim)
        fail(ErrorKind::Precondition, "resource guard: dimension " + std::to_string(p.dim()) + " exceeds the limit " +
                                          std::to_string(c.max_dim));
    if (static_cast<int>(p.num_vertices()) > c.max_vertices)
        fail(ErrorKind::Precondition, "resource guard: " + std::to_string(p.num_vertices()) +
                                          " vertices exceed the limit " + std::to_string(c.max_vertices));
}

namespace {

struct Runner {
    const RunConfig& cfg;
    PipelineReport& rep;

    void record(std::string stage, const std::string& id, int depth, bool ok, json report) {
        rep.stages.push_back({std::move(stage), id, depth, ok, std::move(report)});
    }

    // Facet of g made of the cut vertices.
    static int cut_facet_of(const GermLink& gl) {
        Mask m = 0;
        for (std::size_t i = 0; i < gl.cut.origin2.size(); ++i)
            if (gl.cut.origin2[i] < 0) m |= Mask{1} << i;
        auto id = gl.germ.lattice().find(m);
        if (!id) fail(ErrorKind::Internal, "cut facet not found in the germ");
        return *id;
    }

    bool germ_by_pyramid(const GermLink& gl, const std::string& id, int depth) {
        PyramidReport pyr = verify_pyramid_relations(gl.germ, cut_facet_of(gl));
        bool link_ok = run(gl.link, id + "/link", depth + 1);
        bool ok = pyr.ok() && pyr.hrr_pyramid && link_ok;
        json r = pyramid_to_json(pyr);
        r["link_verdict"] = link_ok;
        record("germ-pyramid", id, depth, ok, std::move(r));
        return ok;
    }

    bool germ_by_deformation(const Polytope& p, int face, const GermLink& gl, const std::string& id, int depth) {
        DeformationReport def = verify_deformation(p, face, cfg.t_samples);
        record("germ-deformation", id, depth, def.ok(), deformation_to_json(def));

        Polytope fpoly = p.face_polytope(face).intrinsic();
        Polytope pl = pyramid(gl.link.intrinsic());
        KunnethReport kun = verify_kunneth(fpoly, pl);
        record("germ-kunneth", id, depth, kun.ok(), kunneth_to_json(kun));

        Mask base = pl.lattice().face(pl.lattice().top_id()).mask & ~(Mask{1} << (pl.num_vertices() - 1));
        PyramidReport pyr = verify_pyramid_relations(pl, pl.lattice().find(base));
        bool link_ok = run(gl.link, id + "/link", depth + 1);
        bool ok = pyr.ok() && pyr.hrr_pyramid && link_ok;
        json r = pyramid_to_json(pyr);
        r["link_verdict"] = link_ok;
        record("germ-link-pyramid", id, depth, ok, std::move(r));
        return def.ok() && kun.ok() && ok;
    }

    bool run(const Polytope& input, const std::string& id, int depth) {
        Polytope p = input.full_dimensional() ? input : input.intrinsic();
        CihModel m(p);
        HltReport hlt = verify_hlt(m);
        HrrReport hrr = verify_hrr(m);
        bool direct = hlt.ok && hrr.ok();
        json dj = ih_report(id, m, hlt, hrr);
        dj["polytope"] = polytope_to_json(p, id);
        record("direct-hrr", id, depth, direct, std::move(dj));

        const auto& lat = p.lattice();
        StoutReport sr = normally_stout_report(lat);
        bool codim_ok = true;
        for (int f : sr.normally_stout_faces)
            if (lat.dim() - lat.face(f).dim < 3) codim_ok = false;
        bool minimal_ok = true;
        if (sr.minimal_ns_face) {
            int f = *sr.minimal_ns_face;
            minimal_ok = is_normally_trivial(lat, f).trivial && is_simple(lat.interval_below(f));
        }
        json sj = stout_to_json(lat, sr);
        sj["codim_at_least_3"] = codim_ok;
        record("defect", id, depth, codim_ok && minimal_ok, std::move(sj));
        if (depth == 0) rep.mu = sr.defect;

        bool verdict;
        if (sr.defect == 0) {
            bool simple = is_simple(lat);
            record("simple-base", id, depth, simple && direct, json{{"simple", simple}, {"hrr", direct}});
            verdict = simple && direct;
        } else {
            int f = *sr.minimal_ns_face;
            GermLink gl = germ_link_residual(p, f);
            int after = normally_stout_report(gl.residual).defect;
            bool step_ok = after == sr.defect - 1;
            if (id.find("/germ") == std::string::npos && id.find("/link") == std::string::npos) ++rep.cutoff_steps;
            record("cutoff", id, depth, step_ok,
                   json{{"face", lat.face(f).vertices},
                        {"face_dim", lat.face(f).dim},
                        {"mu_before", sr.defect},
                        {"mu_after", after},
                        {"germ_f_vector", gl.germ.lattice().f_vector()},
                        {"residual_f_vector", gl.residual.lattice().f_vector()},
                        {"link_f_vector", gl.link.intrinsic().lattice().f_vector()}});

            bool residual_ok = run(gl.residual, id + "/residual", depth + 1);
            bool germ_ok = lat.face(f).dim == 0 ? germ_by_pyramid(gl, id + "/germ", depth + 1)
                                                : germ_by_deformation(p, f, gl, id + "/germ", depth + 1);
            GluingReport glue = gluing_report(m, gl.cut);
            record("gluing", id, depth, glue.ok(), gluing_to_json(glue));
            verdict = codim_ok && minimal_ok && step_ok && residual_ok && germ_ok && glue.ok();
        }
        bool consistent = !verdict || direct;
        record("verdict", id, depth, verdict && consistent,
               json{{"verdict", verdict}, {"direct_hrr", direct}, {"consistent", consistent}});
        if (!consistent) fail(ErrorKind::Internal, "pipeline verdict disagrees with the direct check for " + id);
        return verdict;
    }
};

}  // namespace

PipelineReport verify_pipeline(const Polytope& p, const std::string& id, const RunConfig& c) {
    check_resources(p, c);
    PipelineReport rep;
    rep.polytope_id = id;
    Runner r{c, rep};
    rep.verdict = r.run(p, id, 0);
    for (const auto& s : rep.stages)
        if (s.stage == "direct-hrr" && s.depth == 0) rep.direct_hrr = s.ok;
    return rep;
}

json stage_to_json(const PipelineStage& s) {
    return {{"stage", s.stage}, {"polytope_id", s.polytope_id}, {"depth", s.depth}, {"ok", s.ok}, {"report", s.report}};
}

json pipeline_summary(const PipelineReport& r) {
    json stages = json::array();
    for (const auto& s : r.stages)
        stages.push_back({{"stage", s.stage}, {"polytope_id", s.polytope_id}, {"depth", s.depth}, {"ok", s.ok}});
    return {{"polytope_id", r.polytope_id}, {"mu", r.mu},
            {"cutoff_steps", r.cutoff_steps}, {"direct_hrr", r.direct_hrr},
            {"verdict", r.verdict ? "PASS" : "FAIL"}, {"consistent", r.consistent()},
            {"stages", std::move(stages)}};
}

}  // namespace lw
