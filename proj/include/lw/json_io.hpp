#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "lw/cohomology.hpp"
#include "lw/fan.hpp"
#include "lw/hr_module.hpp"
#include "lw/hvector.hpp"
#include "lw/polytope.hpp"
#include "lw/surgery.hpp"
#include "lw/verify.hpp"

namespace lw {

using json = nlohmann::ordered_json;

// "p/q" strings, "p" when q = 1.  Integers are also accepted on input.
json rat_to_json(const Rat& r);
Rat rat_from_json(const json& j);

struct PolytopeInput {
    std::string id;
    Polytope polytope;
};

// {"id": optional string, "dim": ambient dimension, "vertices": [[coord, ...], ...]}
json polytope_to_json(const Polytope& p, const std::string& id = "");
PolytopeInput polytope_from_json(const json& j);
json read_json_file(const std::string& path);
PolytopeInput read_polytope_file(const std::string& path);

json signature_to_json(const Signature& s);
json lattice_to_json(const FaceLattice& lat);
json fan_to_json(const NormalFan& nf);
json hvec_to_json(const HVec& h);
json tag_to_json(const SimpleTag& t);
json module_to_json(const HRModule& w);

json hlt_to_json(const HltReport& r);
json hrr_to_json(const HrrReport& r);
// Betti numbers, HLT ranks, signatures, HR-equation and definiteness.
json ih_report(const std::string& id, const CihModel& m, const HltReport& hlt, const HrrReport& hrr);

json stout_to_json(const FaceLattice& lat, const StoutReport& r);
json cutoff_to_json(const std::vector<CutoffStep>& trace);
json pyramid_to_json(const PyramidReport& r);
json kunneth_to_json(const KunnethReport& r);
json gluing_to_json(const GluingReport& r);
json deformation_to_json(const DeformationReport& r);

// Indented "key: value" text for a JSON document.
std::string render_text(const json& j);

}  // namespace lw
