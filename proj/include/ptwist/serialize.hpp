#pragma once

#include <string>

#include "json.hpp"
#include "ptwist/algebra.hpp"
#include "ptwist/module.hpp"
#include "ptwist/twists.hpp"

namespace ptwist {

using Json = nlohmann::ordered_json;

// Elements as [[basis index, "scalar"], ...]; scalars as "3/7" or "12 mod 32003".
Json element_to_json(const Element& x);
Element element_from_json(const Json& j, const Field& f);

Json algebra_to_json(const DgAlgebra& a);
// Throws StructuralError on malformed input. The dg-axioms are not checked here.
AlgebraPtr algebra_from_json(const Json& j);

Json module_to_json(const SemiFreeModule& m);
SemiFreeModule module_from_json(const Json& j, AlgebraPtr a);

Json dims_to_json(const GradedDimVector& d);
Json profile_to_json(const HomProfile& p);

// Writes through a temporary file renamed into place. Refuses to replace an
// existing file (ConfigError) unless overwrite is set.
void write_file_atomic(const std::string& path, const std::string& contents, bool overwrite = false);
std::string read_file(const std::string& path);

}  // namespace ptwist
