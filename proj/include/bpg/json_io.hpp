#pragma once

// JSON forms of the library's artifacts. Every top-level document carries
// "format": 1.

#include <json.hpp>

#include "bpg/freequot.hpp"
#include "bpg/goodpres.hpp"
#include "bpg/lowindex.hpp"
#include "bpg/nielsen.hpp"
#include "bpg/presentation.hpp"

namespace bpg {

using Json = nlohmann::json;

inline constexpr int kJsonFormat = 1;

// {"op":"inv","i":0} | {"op":"mul","i":0,"j":1,"e":-3} | {"op":"swap","i":0,"j":1}
Json move_to_json(const NielsenMove& m);
NielsenMove move_from_json(const Json& j);

// {"rank":n,"moves":[...]} in application order.
Json automorphism_to_json(const Automorphism& a);
Automorphism automorphism_from_json(const Json& j);

// {"generators":[names],"relators":["a b^-1", ...]}
Json presentation_to_json(const Presentation& p);
Presentation presentation_from_json(const Json& j);

// Sidecar for `goodpres`: automorphism, t_index and per-relator growth.
Json good_sidecar(const GoodPresentation& g);

// Subgroup generators, labels, relators and inclusion words, plus the count
// checks against the good presentation it came from.
Json subgroup_to_json(const SubgroupPresentation& sub,
                      std::span<const std::string> base_names);
SubgroupPresentation subgroup_from_json(const Json& j,
                                        std::span<const std::string> base_names);
Json cover_sidecar(const SubgroupPresentation& sub, const GoodPresentation& g,
                   std::size_t k);

Json certificate_to_json(const LargenessCertificate& c);
LargenessCertificate certificate_from_json(const Json& j);

Json certify_report(const CertifyResult& r);

// Tables are flat row-major lists, -1 never appears (tables are complete).
Json refutation_to_json(const Refutation& r);

}  // namespace bpg
