// lw: command-line front end for the polytope IH toolkit.
//
//   lw <command> --in FILE [--out DIR] [--t-samples "0,1/4,1/2,1"] [--face ID]
//
// Exit status: 0 checks passed, 1 a verification failed, 2 input or usage error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "lw/error.hpp"
#include "lw/pipeline.hpp"

using namespace lw;

namespace {

const std::map<std::string, std::string> kCommands = {
    {"faces", "face lattice and f-vector"},
    {"fan", "outer normal fan and psi"},
    {"ih", "intersection cohomology Betti numbers and HR signatures"},
    {"hvector", "toric h- and g-vector from the face lattice"},
    {"defect", "normally stout faces and the defect"},
    {"cutoff", "cut off normally stout faces until the residual is simple"},
    {"deform", "check the germ deformation family at a face"},
    {"verify-hlt", "hard Lefschetz check"},
    {"verify-hrr", "Hodge-Riemann check"},
    {"verify-pipeline", "inductive verification by cutting and gluing"},
};

struct Result {
    json summary;
    std::vector<json> stages;
    bool ok = true;
};

void log(const RunConfig& c, const std::string& msg) {
    if (c.verbosity > 0) std::cerr << "lw: " << msg << "\n";
}

Result run_command(const RunConfig& c, const PolytopeInput& in) {
    const Polytope& p = in.polytope.full_dimensional() ? in.polytope : in.polytope.intrinsic();
    Result r;
    const std::string& cmd = c.command;
    log(c, cmd + " on " + in.id);
    if (cmd == "faces") {
        r.summary = {{"polytope_id", in.id}, {"dim", p.dim()}, {"lattice", lattice_to_json(p.lattice())}};
    } else if (cmd == "fan") {
        r.summary = {{"polytope_id", in.id}, {"fan", fan_to_json(outer_normal_fan(p))}};
    } else if (cmd == "ih" || cmd == "verify-hlt" || cmd == "verify-hrr") {
        CihModel m(p);
        HltReport hlt = verify_hlt(m);
        if (cmd == "verify-hlt") {
            r.summary = {{"polytope_id", in.id}, {"betti", m.betti()}, {"hlt", hlt_to_json(hlt)}, {"ok", hlt.ok}};
            r.ok = hlt.ok;
        } else {
            HrrReport hrr = verify_hrr(m);
            r.summary = ih_report(in.id, m, hlt, hrr);
            if (cmd == "verify-hrr") {
                r.summary["hrr"] = hrr_to_json(hrr);
                r.ok = hlt.ok && hrr.ok();
            }
        }
    } else if (cmd == "hvector") {
        HVec h = toric_h(p.lattice());
        auto pr = check_h_properties(h);
        r.summary = {{"polytope_id", in.id},
                     {"hvector", hvec_to_json(h)},
                     {"symmetric", pr.symmetric},
                     {"nonnegative", pr.nonnegative},
                     {"unimodal", pr.unimodal}};
    } else if (cmd == "defect") {
        r.summary = {{"polytope_id", in.id}, {"stout", stout_to_json(p.lattice(), normally_stout_report(p))}};
    } else if (cmd == "cutoff") {
        auto trace = cutoff_pipeline(p);
        r.summary = {{"polytope_id", in.id}, {"cutoff", cutoff_to_json(trace)}};
        for (const auto& s : r.summary["cutoff"]["steps"]) r.stages.push_back({{"stage", "cutoff"}, {"report", s}});
    } else if (cmd == "deform") {
        int face;
        if (c.face) {
            face = *c.face;
        } else {
            auto sr = normally_stout_report(p);
            if (!sr.minimal_ns_face) fail(ErrorKind::Precondition, "polytope is simple; pass --face");
            face = *sr.minimal_ns_face;
        }
        if (face < 0 || face >= static_cast<int>(p.lattice().size())) fail(ErrorKind::InvalidInput, "face id out of range");
        DeformationReport d = verify_deformation(p, face, c.t_samples);
        r.summary = {{"polytope_id", in.id}, {"deformation", deformation_to_json(d)}};
        r.ok = d.ok();
    } else if (cmd == "verify-pipeline") {
        PipelineReport rep = verify_pipeline(p, in.id, c);
        for (const auto& s : rep.stages) {
            log(c, "stage " + s.stage + " [" + s.polytope_id + "] " + (s.ok ? "ok" : "FAILED"));
            r.stages.push_back(stage_to_json(s));
        }
        r.summary = pipeline_summary(rep);
        r.ok = rep.verdict;
    }
    if (r.stages.empty()) r.stages.push_back({{"stage", cmd}, {"report", r.summary}});
    return r;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream f(path);
    if (!f) fail(ErrorKind::InvalidInput, "cannot write " + path.string());
    f << text;
}

int diagnostic(const std::string& kind, const std::string& msg) {
    std::cout << json{{"error", {{"kind", kind}, {"message", msg}}}}.dump(2) << "\n";
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Combinatorial intersection cohomology of polytopes"};
    app.require_subcommand(1, 1);
    std::vector<std::string> inputs;
    std::string out, config_path, samples, seed_str;
    int face = -1, verbosity = 0, max_dim = -1, max_vertices = -1;
    for (const auto& [name, help] : kCommands) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_option("--in", inputs, "polytope JSON file(s)");
        sub->add_option("--out", out, "output directory");
        sub->add_option("--config", config_path, "JSON run configuration");
        sub->add_option("--t-samples", samples, "deformation samples, e.g. \"0,1/4,1/2,1\"");
        sub->add_option("--face", face, "face id for deform");
        sub->add_option("--seed", seed_str, "seed recorded in the run configuration");
        sub->add_option("--max-dim", max_dim, "resource guard: largest dimension");
        sub->add_option("--max-vertices", max_vertices, "resource guard: most vertices");
        sub->add_flag("-v,--verbose", verbosity, "progress on stderr");
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return diagnostic("usage", e.what());
    }

    try {
        RunConfig c;
        if (!config_path.empty()) c = config_from_json(read_json_file(config_path));
        c.command = app.get_subcommands().front()->get_name();
        if (!inputs.empty()) c.inputs = inputs;
        if (!out.empty()) c.out = out;
        if (!samples.empty()) c.t_samples = parse_samples(samples);
        if (face >= 0) c.face = face;
        if (!seed_str.empty()) {
            try {
                c.seed = std::stoull(seed_str);
            } catch (const std::exception&) {
                fail(ErrorKind::InvalidInput, "seed must be a non-negative integer");
            }
        }
        if (max_dim >= 0) c.max_dim = max_dim;
        if (max_vertices >= 0) c.max_vertices = max_vertices;
        if (verbosity > 0) c.verbosity = verbosity;
        if (c.inputs.empty()) fail(ErrorKind::InvalidInput, "no input: pass --in FILE");

        std::vector<Result> results;
        for (const auto& path : c.inputs) {
            PolytopeInput in = read_polytope_file(path);
            check_resources(in.polytope, c);
            results.push_back(run_command(c, in));
        }
        bool ok = true;
        json summary;
        std::vector<json> stages;
        for (auto& r : results) {
            ok = ok && r.ok;
            stages.insert(stages.end(), r.stages.begin(), r.stages.end());
        }
        if (results.size() == 1) {
            summary = results.front().summary;
        } else {
            summary = json::array();
            for (auto& r : results) summary.push_back(r.summary);
        }
        summary = json{{"command", c.command}, {"status", ok ? "PASS" : "FAIL"}, {"seed", c.seed}, {"result", summary}};

        if (c.out.empty()) {
            std::cout << summary.dump(2) << "\n";
        } else {
            std::filesystem::path dir(c.out);
            std::error_code ec;
            std::filesystem::create_directories(dir, ec);
            if (ec) fail(ErrorKind::InvalidInput, "cannot create " + c.out + ": " + ec.message());
            write_file(dir / "summary.json", summary.dump(2) + "\n");
            std::string lines;
            for (const auto& s : stages) lines += s.dump() + "\n";
            write_file(dir / "stages.jsonl", lines);
            write_file(dir / "report.txt", render_text(summary));
            write_file(dir / "config.json", config_to_json(c).dump(2) + "\n");
        }
        return ok ? 0 : 1;
    } catch (const Error& e) {
        return diagnostic(to_string(e.kind()), e.what());
    }
}
