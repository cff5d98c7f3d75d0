#pragma once

#include <string>

#include "json.hpp"

#include "gmf/geometry.hpp"
#include "gmf/kernel.hpp"
#include "gmf/maximal.hpp"
#include "gmf/semigroup.hpp"
#include "gmf/verify.hpp"

namespace gmf {

using ojson = nlohmann::ordered_json;

ojson to_json(const Point& p);
ojson to_json(const ConeSpec& c);
ojson to_json(const SemigroupEval& e);
ojson to_json(const MaximalResult& r, bool cone_search);
ojson to_json(const LemmaReport& r);
ojson to_json(const ProofConstants& pc);
ojson to_json(const RatioReport& r);
ojson to_json(const ScanResult& s);

}  // namespace gmf
