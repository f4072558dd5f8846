#pragma once

// JSON import/export for every wire type. Floats are emitted as decimal
// strings with 12 significant digits so repeated runs are byte-identical and
// diffs stay readable; readers accept plain numbers as well.

#include <json.hpp>

#include "swclab/dentability.hpp"
#include "swclab/embeddings.hpp"
#include "swclab/james.hpp"
#include "swclab/set_families.hpp"
#include "swclab/uniform_convexity.hpp"

namespace swclab::io {

using Json = nlohmann::ordered_json;

std::string fmt_num(double v);
Json num(double v);
double to_double(const Json& j);

Json norm_to_json(const AmbientNorm& n);
AmbientNorm norm_from_json(const Json& j);

Json pointset_to_json(const PointSet& ps);
PointSet pointset_from_json(const Json& j);

Json body_to_json(const ConvexBody& k);
ConvexBody body_from_json(const Json& j);

Json halfspace_to_json(const HalfSpace& h);

Json trace_to_json(const DerivationTrace& t);

Json certificate_to_json(const SeparationCertificate& c);
Json james_to_json(const JamesSystem& s);
JamesSystem james_from_json(const Json& j);
Json cube_to_json(const CubeCertificate& c);

Json graph_to_json(const MetricGraph& g, bool include_structure = true);

Json embedding_to_json(const Embedding& e);
Embedding embedding_from_json(const Json& j);

Json family_to_json(const SetFamily& f);
SetFamily family_from_json(const Json& j);

Json distortion_to_json(const DistortionReport& r);
Json prune_trace_to_json(const PruneTrace& t);

Json vec_to_json(const Vec& v);
Vec vec_from_json(const Json& j);

// CSV emitters (deterministic %.12g formatting)
std::string dist_matrix_csv(const MetricGraph& g);
std::string modulus_table_csv(const std::vector<ModulusEstimate>& rows);

}  // namespace swclab::io
