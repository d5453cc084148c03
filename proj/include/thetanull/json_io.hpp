#pragma once

#include "thetanull/gauss.hpp"
#include "thetanull/sing_scheme.hpp"
#include "thetanull/strata.hpp"

#include <json.hpp>

namespace thetanull {

using json = nlohmann::ordered_json;

// schemas: period {"g", "re", "im"}; symplectic {"g", "a", "b", "c", "d"};
// characteristic {"eps", "delta"}; schema violations raise InvalidArgument

json to_json(const PeriodMatrix& tau);
PeriodMatrix period_from_json(const json& j, double symmetry_tol = 1e-9);

json to_json(const SymplecticElement& sigma);
SymplecticElement symplectic_from_json(const json& j);

json to_json(const Characteristic& ch);
Characteristic characteristic_from_json(const json& j);

json to_json(const CMat& m);  // {"re": [[..]], "im": [[..]]}
CMat cmat_from_json(const json& j);
json to_json(const CVec& v);
CVec cvec_from_json(const json& j);

json to_json(const RankReport& r);
json to_json(const StratumClassification& c);
json to_json(const ThetaJet& jet);
json to_json(const SchemeJacobian& jac);
SchemeJacobian scheme_jacobian_from_json(const json& j);
json to_json(const BorderedHessian& bh);

json load_json_file(const std::string& path);

}  // namespace thetanull
