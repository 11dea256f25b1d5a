#pragma once

#include <json.hpp>

#include "flat.hpp"
#include "fueter.hpp"
#include "projective.hpp"

namespace qtw {

using json = nlohmann::json;

// Wire layouts (stable):
//   Quaternion        [w, x, y, z]
//   HMatrix           { "rows", "cols", "entries": [[ [w,x,y,z], ... ], ...] }
//   RealLinearMap     { "m", "n", "data": row-major doubles }
//   decomposition     { "a", "A", "T" (9 doubles row-major), "residual" }
//   samples file      [ { "x": [[w,x,y,z],...], "y": [[w,x,y,z],...] }, ... ]
//   recovery          { "A", "residual", "second_singular_value" }

json to_json(const Quaternion& q);
Quaternion quaternion_from_json(const json& j);

json to_json(const HVector& x);
HVector hvector_from_json(const json& j);

json to_json(const HMatrix& a);
HMatrix hmatrix_from_json(const json& j);

json to_json(const RealLinearMap& t);
RealLinearMap realmap_from_json(const json& j);

json to_json(const Rotation3& r);
Rotation3 rotation_from_json(const json& j);

json to_json(const Decomposition& d);

json to_json(const FueterSuiteReport& r);

json to_json(const ProjectiveSample& s);
ProjectiveSample samples_from_json(const json& j);

json to_json(const Recovery& r);

json to_json(const LinesCheckReport& r);

json to_json(const TwistorReport& r);

/// Parse with ParseError instead of nlohmann's exception type.
json parse_json(const std::string& text);

} // namespace qtw
