#pragma once

#include <iosfwd>
#include <string>

#include "detf/frames.hpp"

namespace detf {

// "gram N" then N lines of N entries "re+imi" at full precision, or "exact N" then N
// lines of Gaussian integers of sqrt(N-1)(G - I).
void write_gram(std::ostream& out, const GramMatrix& g);
void write_exact_gram(std::ostream& out, const GramMatrix& g);
GramMatrix read_gram(std::istream& in);

std::string format_complex(Complex z);
Complex parse_complex(const std::string& s);

}  // namespace detf
