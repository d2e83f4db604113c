#include "detf/gramio.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>

#include "detf/equiv.hpp"

namespace detf {

std::string format_complex(Complex z) {
  char buf[80];
  const double im = z.imag();
  std::snprintf(buf, sizeof buf, "%.17g%c%.17gi", z.real(), std::signbit(im) ? '-' : '+', std::abs(im));
  return buf;
}

Complex parse_complex(const std::string& s) {
  const char* p = s.c_str();
  char* end = nullptr;
  const double re = std::strtod(p, &end);
  if (end == p || (*end != '+' && *end != '-')) fail(ErrorKind::InvalidInput, "bad complex entry '" + s + "'");
  const char* q = end;
  const double im = std::strtod(q, &end);
  if (end == q || *end != 'i' || end[1] != '\0') fail(ErrorKind::InvalidInput, "bad complex entry '" + s + "'");
  return {re, im};
}

void write_gram(std::ostream& out, const GramMatrix& g) {
  out << "gram " << g.size() << '\n';
  for (int r = 0; r < g.size(); ++r) {
    for (int c = 0; c < g.size(); ++c) out << (c ? " " : "") << format_complex(g(r, c));
    out << '\n';
  }
}

void write_exact_gram(std::ostream& out, const GramMatrix& g) {
  const GaussIntMatrix s = exact_view(g);
  out << "exact " << g.size() << '\n';
  for (int r = 0; r < g.size(); ++r) {
    for (int c = 0; c < g.size(); ++c) {
      const auto& z = s(r, c);
      out << (c ? " " : "") << z.re << (z.im < 0 ? '-' : '+') << std::llabs(z.im) << 'i';
    }
    out << '\n';
  }
}

GramMatrix read_gram(std::istream& in) {
  std::string kind;
  int n = 0;
  if (!(in >> kind >> n) || (kind != "gram" && kind != "exact") || n < 1 || n > 4096)
    fail(ErrorKind::InvalidInput, "expected header 'gram N' or 'exact N'");
  std::string tok;
  if (kind == "gram") {
    ComplexMatrix g(n, n);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) {
        if (!(in >> tok)) fail(ErrorKind::InvalidInput, "truncated Gram file");
        g(r, c) = parse_complex(tok);
      }
    return GramMatrix(std::move(g), 1e-8);
  }
  GaussIntMatrix s(n, n);
  ComplexMatrix g = ComplexMatrix::Identity(n, n);
  const double scale = n > 1 ? 1.0 / std::sqrt(double(n) - 1.0) : 0.0;
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      if (!(in >> tok)) fail(ErrorKind::InvalidInput, "truncated Gram file");
      const Complex z = parse_complex(tok);
      const GaussInt e(std::llround(z.real()), std::llround(z.imag()));
      if (double(e.re) != z.real() || double(e.im) != z.imag()) fail(ErrorKind::InvalidInput, "exact entries must be Gaussian integers");
      s(r, c) = e;
      g(r, c) += Complex(double(e.re), double(e.im)) * scale;
    }
  return GramMatrix(std::move(g), std::move(s));
}

}  // namespace detf
