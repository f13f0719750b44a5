#pragma once

#include <string>

#include "json.hpp"
#include "mkd/formality.hpp"
#include "mkd/galgebra.hpp"
#include "mkd/gradedO.hpp"

namespace mkd {

using json = nlohmann::ordered_json;

json to_json(const Mat& M);
Mat mat_from_json(const json& j);
json to_json(const GradedDims& d);
json to_json(const GradedAlgebra& A);
AlgebraPtr algebra_from_json(const json& j);
json to_json(const BigradedDgAlgebra& R);
json to_json(const BigradedDims& d);

// E, every E^s and the embeddings; module data and traces are rebuilt on load.
json model_to_json(const GradedModel& G);
GradedModel model_from_json(const json& j, std::shared_ptr<const WeylGroup> W, uint32_t ell);

}  // namespace mkd
