#pragma once

#include <istream>

#include "json.hpp"
#include "nabla/dfc.hpp"
#include "nabla/rl_ops.hpp"
#include "nabla/schrodinger.hpp"
#include "nabla/verify.hpp"

namespace nabla {

using json = nlohmann::json;

json grid_to_json(const GridFunction& u);
GridFunction grid_from_json(const json& j);

json structured_to_json(const StructuredFunction& f);
StructuredFunction structured_from_json(const json& j);

json equation_to_json(const EquationParams& ep);
EquationParams equation_from_json(const json& j);

json solution_to_json(const SolutionRecord& sr);
SolutionRecord solution_from_json(const json& j);

json report_to_json(const SuiteReport& rep);

// CSV with header exactly `t,value`, one row per grid point, t ascending
// and contiguous.
GridFunction parse_grid_csv(std::istream& in);

}  // namespace nabla
