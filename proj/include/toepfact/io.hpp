#pragma once

// Text formats.
//
//   toepfact-matrix v1 <n> <n>
//   <n lines of n complex literals>
//
//   toepfact-chain v1 <n>
//   method <name>
//   kind <toeplitz|hankel>
//   seed <u64>
//   residual <value> <relative|absolute>
//   leading none | leading <n one-based indices>
//   toeplitz <2n-1 literals>          (diagonals j-i = -(n-1) .. n-1)
//   hankel <2n-1 literals>            (anti-diagonals i+j = 0 .. 2n-2)
//   permutation <n one-based indices> (row i has its one in column p_i)
//   end
//
// Complex literals are "re" or "re+imi"/"re-imi", printed with 17 significant digits
// so doubles survive a round trip unchanged.

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <istream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "chain.hpp"

namespace toepfact {

inline std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline std::string format_complex(const Scalar& z) {
  std::string s = format_real(z.real());
  if (z.imag() != 0.0) {
    std::string im = format_real(z.imag());
    if (im.front() != '-' && im.front() != '+') s += '+';
    s += im;
    s += 'i';
  }
  return s;
}

namespace detail {
inline bool parse_double(std::string_view s, double& out) {
  if (s.empty()) return false;
  if (s.front() == '+') s.remove_prefix(1);
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc{} && ptr == end;
}
}  // namespace detail

/// Parses "1.5", "-2e-3", "2-0.25i", "3i", "-i". Throws parse_error (line 0) on junk;
/// callers rethrow with the right line number.
inline Scalar parse_complex(std::string_view s) {
  auto fail = [&]() -> Scalar { throw parse_error("bad complex literal '" + std::string(s) + "'"); };
  if (s.empty()) return fail();
  if (s.back() != 'i') {
    double re = 0.0;
    if (!detail::parse_double(s, re)) return fail();
    return {re, 0.0};
  }
  std::string_view body = s.substr(0, s.size() - 1);
  // Split at the last sign that is not at the start and not part of an exponent.
  std::size_t split = std::string_view::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  double re = 0.0, im = 0.0;
  std::string_view im_part = body;
  if (split != std::string_view::npos) {
    if (!detail::parse_double(body.substr(0, split), re)) return fail();
    im_part = body.substr(split);
  }
  if (im_part.empty() || im_part == "+") {
    im = 1.0;
  } else if (im_part == "-") {
    im = -1.0;
  } else if (!detail::parse_double(im_part, im)) {
    return fail();
  }
  return {re, im};
}

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

/// Line reader that skips blank lines and '#' comments and remembers line numbers.
class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  bool next(std::vector<std::string_view>& tokens) {
    while (std::getline(in_, current_)) {
      ++line_;
      tokens = split_ws(current_);
      if (tokens.empty() || tokens.front().front() == '#') continue;
      return true;
    }
    return false;
  }

  std::size_t line() const noexcept { return line_; }

  [[noreturn]] void fail(const std::string& what) const { throw parse_error(what, line_); }

  Scalar complex_at(std::string_view tok) const {
    Scalar z;
    try {
      z = parse_complex(tok);
    } catch (const parse_error&) {
      fail("bad complex literal '" + std::string(tok) + "'");
    }
    if (!is_finite(z)) fail("non-finite value '" + std::string(tok) + "'");
    return z;
  }

  std::size_t size_at(std::string_view tok) const {
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || ptr != tok.data() + tok.size())
      fail("expected a non-negative integer, got '" + std::string(tok) + "'");
    return v;
  }

 private:
  std::istream& in_;
  std::string current_;
  std::size_t line_ = 0;
};

}  // namespace detail

inline std::string serialize_matrix(const DenseMatrix& a) {
  std::string out = "toepfact-matrix v1 " + std::to_string(a.size()) + ' ' + std::to_string(a.size()) + '\n';
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a.size(); ++j) {
      if (j) out += ' ';
      out += format_complex(a(i, j));
    }
    out += '\n';
  }
  return out;
}

inline DenseMatrix parse_matrix(std::istream& in) {
  detail::LineReader reader(in);
  std::vector<std::string_view> tok;
  if (!reader.next(tok)) throw parse_error("empty matrix file", reader.line());
  if (tok.size() != 4 || tok[0] != "toepfact-matrix" || tok[1] != "v1")
    reader.fail("expected header 'toepfact-matrix v1 <n> <n>'");
  const std::size_t n = reader.size_at(tok[2]);
  if (reader.size_at(tok[3]) != n) reader.fail("matrix must be square");
  if (n == 0) reader.fail("matrix dimension must be positive");

  DenseMatrix a(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!reader.next(tok)) throw parse_error("expected " + std::to_string(n) + " rows, got " + std::to_string(i), reader.line());
    if (tok.size() != n)
      reader.fail("row " + std::to_string(i + 1) + " has " + std::to_string(tok.size()) +
                  " entries, expected " + std::to_string(n));
    for (std::size_t j = 0; j < n; ++j) a(i, j) = reader.complex_at(tok[j]);
  }
  if (reader.next(tok)) reader.fail("trailing content after matrix rows");
  return a;
}

inline DenseMatrix parse_matrix(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_matrix(in);
}

/// A chain plus the metadata recorded by `decompose`.
struct ChainDocument {
  FactorChain chain;
  std::string method = "unknown";
  std::string kind = "toeplitz";
  std::uint64_t seed = 0;
  double residual = 0.0;
  /// True when the target was zero and the residual is absolute.
  bool residual_absolute = false;

  friend bool operator==(const ChainDocument&, const ChainDocument&) = default;
};

namespace detail {
inline std::string one_based(const PermutationSpec& p) {
  std::string s;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += ' ';
    s += std::to_string(p.perm[i] + 1);
  }
  return s;
}

inline std::string values(const Vector& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ' ';
    s += format_complex(v[i]);
  }
  return s;
}
}  // namespace detail

inline std::string serialize_chain(const ChainDocument& doc) {
  const auto& c = doc.chain;
  std::string out = "toepfact-chain v1 " + std::to_string(c.n) + '\n';
  out += "method " + doc.method + '\n';
  out += "kind " + doc.kind + '\n';
  out += "seed " + std::to_string(doc.seed) + '\n';
  out += "residual " + format_real(doc.residual) + (doc.residual_absolute ? " absolute\n" : " relative\n");
  out += c.leading_permutation ? "leading " + detail::one_based(*c.leading_permutation) + '\n'
                               : std::string("leading none\n");
  for (const auto& f : c.factors) {
    std::visit(
        [&](const auto& x) {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, ToeplitzSpec>) {
            out += "toeplitz " + detail::values(x.diag) + '\n';
          } else if constexpr (std::is_same_v<T, HankelSpec>) {
            out += "hankel " + detail::values(x.antidiag) + '\n';
          } else {
            out += "permutation " + detail::one_based(x) + '\n';
          }
        },
        f);
  }
  out += "end\n";
  return out;
}

inline ChainDocument parse_chain(std::istream& in) {
  detail::LineReader reader(in);
  std::vector<std::string_view> tok;
  auto expect = [&](std::string_view key, std::size_t count) {
    if (!reader.next(tok)) throw parse_error("unexpected end of file, expected '" + std::string(key) + "'", reader.line());
    if (tok.front() != key) reader.fail("expected '" + std::string(key) + "', got '" + std::string(tok.front()) + "'");
    if (count && tok.size() != count) reader.fail("wrong number of fields for '" + std::string(key) + "'");
  };

  ChainDocument doc;
  expect("toepfact-chain", 3);
  if (tok[1] != "v1") reader.fail("unsupported chain version '" + std::string(tok[1]) + "'");
  const std::size_t n = reader.size_at(tok[2]);
  if (n == 0) reader.fail("chain dimension must be positive");
  doc.chain.n = n;

  expect("method", 2);
  doc.method = std::string(tok[1]);
  expect("kind", 2);
  doc.kind = std::string(tok[1]);
  expect("seed", 2);
  {
    auto [ptr, ec] = std::from_chars(tok[1].data(), tok[1].data() + tok[1].size(), doc.seed);
    if (ec != std::errc{} || ptr != tok[1].data() + tok[1].size()) reader.fail("bad seed");
  }
  expect("residual", 3);
  if (!detail::parse_double(tok[1], doc.residual)) reader.fail("bad residual value");
  if (tok[2] == "absolute") doc.residual_absolute = true;
  else if (tok[2] != "relative") reader.fail("residual flag must be 'relative' or 'absolute'");

  auto read_perm = [&](std::size_t first) {
    if (tok.size() != first + n) reader.fail("permutation needs " + std::to_string(n) + " indices");
    std::vector<std::size_t> p(n);
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t v = reader.size_at(tok[first + i]);
      if (v < 1 || v > n) reader.fail("permutation index out of range");
      p[i] = v - 1;
    }
    try {
      return PermutationSpec(std::move(p));
    } catch (const invalid_value_error&) {
      reader.fail("permutation is not a bijection");
    }
  };
  auto read_values = [&]() {
    if (tok.size() != 2 * n) reader.fail("expected " + std::to_string(2 * n - 1) + " values");
    Vector v(2 * n - 1);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = reader.complex_at(tok[i + 1]);
    return v;
  };

  expect("leading", 0);
  if (!(tok.size() == 2 && tok[1] == "none")) doc.chain.leading_permutation = read_perm(1);

  for (;;) {
    if (!reader.next(tok)) throw parse_error("unexpected end of file, expected 'end'", reader.line());
    const auto tag = tok.front();
    if (tag == "end") {
      if (tok.size() != 1) reader.fail("'end' takes no fields");
      break;
    }
    if (tag == "toeplitz") doc.chain.factors.emplace_back(ToeplitzSpec(n, read_values()));
    else if (tag == "hankel") doc.chain.factors.emplace_back(HankelSpec(n, read_values()));
    else if (tag == "permutation") doc.chain.factors.emplace_back(read_perm(1));
    else reader.fail("unknown factor tag '" + std::string(tag) + "'");
  }
  if (reader.next(tok)) reader.fail("trailing content after 'end'");
  return doc;
}

inline ChainDocument parse_chain(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_chain(in);
}

}  // namespace toepfact
