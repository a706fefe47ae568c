#pragma once

#include <string>

#include "json.hpp"

#include "springer/bundle.hpp"
#include "springer/diagram.hpp"
#include "springer/flag.hpp"
#include "springer/oracle.hpp"
#include "springer/quiver.hpp"

namespace springer::io {

using json = nlohmann::ordered_json;

// integers (and F_p residues) as numbers, everything else in the scalar syntax
json to_json(const Scalar& s);
Scalar scalar_from_json(const Field& f, const json& j);

// rows of scalars; input also accepts the "[a b; c d]" literal
json to_json(const Matrix& m);
Matrix matrix_from_json(const Field& f, const json& j, std::size_t rows, std::size_t cols);

json to_json(const CupDiagram& d);
json to_json(const MarkedCupDiagram& d);
// {"text": "..."} or the structured form {"type","n","cups","rays"}
AnyDiagram diagram_from_json(const json& j);

// basis rows per level F_0..F_n
json to_json(const Flag& fl);
Flag flag_from_json(const Field& f, const json& levels);

// {"field","n","k","A":[A_0..A_{n-1}],"B":[...],"Gamma":{"k":..,"n-k":..},"Delta":{...}}
json to_json(const QuiverRep& r);
QuiverRep quiver_from_json(const json& j);

json to_json(const TildeReport& r);
json to_json(const MarkedReport& r, const std::string& diagram);
json to_json(const ThetaFixedResult& r);
json to_json(const BundleReport& r);
json to_json(const DecompositionReport& r);
std::string to_csv(const DecompositionReport& r);
json to_json(const P1Point& p);

// "1:2,0:1" -> [1:2], [0:1]
std::vector<P1Point> parse_params(const Field& f, const std::string& text);

json read_json_file(const std::string& path);

}  // namespace springer::io
