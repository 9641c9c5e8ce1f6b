#pragma once

#include <filesystem>
#include <json.hpp>

#include "djet/bergman.hpp"
#include "djet/fuchsian.hpp"
#include "djet/jetext.hpp"

namespace djet {

// JSON wire formats. Complex numbers serialize as [re, im]; a bare number is
// accepted on input as a real. Structural problems (missing fields, wrong
// types, bad indices) throw std::invalid_argument or nlohmann exceptions,
// which the CLI maps to parse-error exits; value-domain problems (e.g. a
// point on the boundary) throw std::domain_error.

cplx complex_from_json(const nlohmann::json& j);
nlohmann::json complex_to_json(cplx v);

// { "generators": [ { "alpha": [re,im], "beta": [re,im] }, ... ],
//   "relations": [[1,-2,3,-4,-1,2,-3,4], ...] }
// Relation entries are 1-based signed generator indices. The returned set is
// validated (relations compose to identity within 1e-9).
GeneratorSet generator_set_from_json(const nlohmann::json& j);
GeneratorSet load_generator_set(const std::filesystem::path& file);

// { "order": N, "kind": "power_series", "coeffs": [[re,im], ...] }
// or { "order": N, "kind": "poincare", "word_length": L, "generators_ref": "path" }.
// generators_ref resolves relative to base_dir. "order" may be omitted when
// fallback_order >= 0 (e.g. supplied by a CLI flag).
NDifferential ndifferential_from_json(const nlohmann::json& j,
                                      const std::filesystem::path& base_dir,
                                      int fallback_order = -1);

struct KernelConfig {
    KernelBasis basis;
    double alpha;
};

// { "genus": g, "alpha": a,
//   "families": [ { "order": N, "psi": <NDifferential>, "sq_norm": x }, ... ] }
// A family's "order" is the fallback order for its psi.
KernelConfig kernel_config_from_json(const nlohmann::json& j,
                                     const std::filesystem::path& base_dir);
KernelConfig load_kernel_config(const std::filesystem::path& file);

}  // namespace djet
