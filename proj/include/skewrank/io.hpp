// TensorFile reading and writing.
//
// A TensorFile is a JSON document:
//   {"dim": 6, "degree": 3, "dual": false,
//    "terms": [{"coeff": "1", "indices": [0, 1, 2]}, {"coeff": "-3/2", "indices": [3, 5, 4]}],
//    "ext": {"D": 2}}
// Coefficients are integers, fractions "p/q", or quadratic values "a+b√D"
// (ASCII "sqrt(D)" is accepted). "dual" defaults to false and "ext" is only
// needed for quadratic coefficients. Unsorted indices are sorted with the sign
// of the permutation applied; repeated or out-of-range indices are rejected.
#pragma once

#include <stdexcept>
#include <string>

#include "skewrank/multivector.hpp"

namespace skewrank {

class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

Multivector parse_tensor(const std::string& text);
/// Canonical form: lex-ordered terms, reduced coefficients, two-space indent.
std::string serialize_tensor(const Multivector& t);

std::string read_text_file(const std::string& path);  // throws ParseError
Multivector read_tensor_file(const std::string& path);

}  // namespace skewrank
