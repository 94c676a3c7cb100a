#include "dpres/io.hpp"

#include <cctype>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>

#include "dpres/error.hpp"

namespace dpres {

namespace {

[[noreturn]] void fail(std::size_t line, std::size_t col, const std::string& msg) {
  throw ParseError("line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + msg);
}

struct Cursor {
  const std::string& s;
  std::size_t pos;
  std::size_t line;
  std::size_t base;  // column offset of s[0]

  std::size_t col() const { return base + pos + 1; }
  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool done() {
    skip_ws();
    return pos >= s.size();
  }
  bool peek(char c) {
    skip_ws();
    return pos < s.size() && s[pos] == c;
  }
  void expect(char c) {
    if (!peek(c)) fail(line, col(), std::string("expected '") + c + "'");
    ++pos;
  }
  bool at_digit() {
    skip_ws();
    return pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]));
  }
  mpz_class integer() {
    skip_ws();
    std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (start == pos) fail(line, col(), "expected an integer");
    return mpz_class(s.substr(start, pos - start));
  }
  long small_integer(long lo, long hi, const char* what) {
    std::size_t c = (skip_ws(), col());
    mpz_class v = integer();
    if (v < lo || v > hi) fail(line, c, std::string(what) + " out of range");
    return v.get_si();
  }
};

DPPolynomial parse_poly(const Ring& ring, Cursor& cur) {
  const FieldSpec& field = ring.field();
  const auto n = static_cast<std::size_t>(ring.nvars());
  DPPolynomial out;
  bool first = true;
  while (!cur.done()) {
    int sign = 1;
    if (cur.peek('+') || cur.peek('-')) {
      sign = cur.s[cur.pos] == '-' ? -1 : 1;
      ++cur.pos;
    } else if (!first) {
      fail(cur.line, cur.col(), "expected '+' or '-' between terms");
    }
    first = false;

    std::size_t term_col = (cur.skip_ws(), cur.col());
    mpz_class num = 1, den = 1;
    bool has_coeff = false;
    if (cur.at_digit()) {
      num = cur.integer();
      has_coeff = true;
      if (cur.peek('/')) {
        ++cur.pos;
        std::size_t c = (cur.skip_ws(), cur.col());
        den = cur.integer();
        if (den == 0) fail(cur.line, c, "zero denominator");
      }
      if (cur.peek('*')) ++cur.pos;
    }
    std::vector<int> exps(n, 0);
    bool has_factor = false;
    while (cur.peek('X')) {
      ++cur.pos;
      std::size_t vc = cur.col();
      if (cur.pos >= cur.s.size() || !std::isdigit(static_cast<unsigned char>(cur.s[cur.pos])))
        fail(cur.line, vc, "expected a variable index after 'X'");
      long k = cur.small_integer(1, static_cast<long>(n), "variable index");
      long e = 1;
      if (cur.pos < cur.s.size() && cur.s[cur.pos] == '^') {
        ++cur.pos;
        cur.expect('(');
        e = cur.small_integer(0, 1 << 20, "exponent");
        cur.expect(')');
      }
      exps[static_cast<std::size_t>(k - 1)] += static_cast<int>(e);
      has_factor = true;
      if (cur.peek('*')) {
        ++cur.pos;
        if (!cur.peek('X')) fail(cur.line, cur.col(), "expected a factor after '*'");
      }
    }
    if (!has_coeff && !has_factor) fail(cur.line, term_col, "expected a term");
    if (field.is_prime_field() && den % field.characteristic() == 0)
      fail(cur.line, term_col, "denominator is zero in " + field.name());
    Scalar c = field.from_fraction(sign * num, den);
    if (!c.is_zero()) out += DPPolynomial(DPMonomial::make(ring, exps), c);
  }
  return out;
}

std::vector<long> int_list(Cursor& cur, bool allow_negative) {
  std::vector<long> v;
  while (!cur.done()) {
    std::size_t c = cur.col();
    long sign = 1;
    if (allow_negative && cur.peek('-')) {
      sign = -1;
      ++cur.pos;
    }
    if (!cur.at_digit()) fail(cur.line, c, "expected an integer");
    mpz_class x = cur.integer();
    if (x > 1000000) fail(cur.line, c, "integer out of range");
    v.push_back(sign * x.get_si());
  }
  return v;
}

std::string strip_comment(const std::string& line) {
  auto h = line.find('#');
  return h == std::string::npos ? line : line.substr(0, h);
}

}  // namespace

DPPolynomial parse_dp_polynomial(const Ring& ring, const std::string& text) {
  Cursor cur{text, 0, 1, 0};
  if (cur.done()) fail(1, 1, "empty polynomial");
  if (text.find_first_not_of(" \t0") == std::string::npos) return DPPolynomial();
  return parse_poly(ring, cur);
}

DPMatrix parse_dpmatrix(const std::string& text) {
  std::optional<FieldSpec> field;
  std::optional<int> nvars;
  std::optional<std::vector<int>> weights, rows, cols;
  std::optional<Ring> ring;
  std::optional<DPMatrix> mat;
  std::set<std::pair<long, long>> seen;

  auto ensure_matrix = [&](std::size_t line) {
    if (mat) return;
    if (!field) fail(line, 1, "missing 'field' directive");
    if (!nvars) fail(line, 1, "missing 'vars' directive");
    if (!rows) fail(line, 1, "missing 'rowtwists' directive");
    if (!cols) fail(line, 1, "missing 'coltwists' directive");
    ring = Ring(*field, weights.value_or(std::vector<int>(static_cast<std::size_t>(*nvars), 1)));
    mat = DPMatrix(*ring, *rows, *cols);
  };

  std::istringstream in(text);
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    const std::string body = strip_comment(raw);
    Cursor cur{body, 0, lineno, 0};
    if (cur.done()) continue;
    std::size_t kw_col = cur.col();
    std::size_t start = cur.pos;
    while (cur.pos < body.size() && std::isalpha(static_cast<unsigned char>(body[cur.pos]))) ++cur.pos;
    const std::string kw = body.substr(start, cur.pos - start);

    auto once = [&](bool already) {
      if (already) fail(lineno, kw_col, "duplicate '" + kw + "' directive");
      if (mat) fail(lineno, kw_col, "'" + kw + "' must precede the entries");
    };

    if (kw == "field") {
      once(field.has_value());
      cur.skip_ws();
      std::size_t c = cur.col();
      if (body.compare(cur.pos, 2, "QQ") == 0) {
        cur.pos += 2;
        field = FieldSpec::rationals();
      } else {
        if (!cur.at_digit()) fail(lineno, c, "expected a prime or QQ");
        mpz_class p = cur.integer();
        if (p > 2147483647) fail(lineno, c, "field modulus too large");
        try {
          field = FieldSpec::prime(p.get_si());
        } catch (const ConfigError&) {
          fail(lineno, c, "field modulus " + p.get_str() + " is not prime");
        }
      }
    } else if (kw == "vars") {
      once(nvars.has_value());
      nvars = static_cast<int>(cur.small_integer(1, 30, "number of variables"));
    } else if (kw == "weights") {
      once(weights.has_value());
      if (!nvars) fail(lineno, kw_col, "'weights' needs 'vars' first");
      auto v = int_list(cur, false);
      if (v.size() != static_cast<std::size_t>(*nvars))
        fail(lineno, kw_col, "expected " + std::to_string(*nvars) + " weights");
      for (long w : v)
        if (w < 1) fail(lineno, kw_col, "weights must be positive");
      weights = std::vector<int>(v.begin(), v.end());
      continue;
    } else if (kw == "rowtwists" || kw == "coltwists") {
      auto& slot = kw == "rowtwists" ? rows : cols;
      once(slot.has_value());
      auto v = int_list(cur, true);
      slot = std::vector<int>(v.begin(), v.end());
      continue;
    } else if (kw == "entry") {
      ensure_matrix(lineno);
      std::size_t ic = (cur.skip_ws(), cur.col());
      long i = cur.small_integer(1, static_cast<long>(mat->rows()), "row index");
      long j = cur.small_integer(1, static_cast<long>(mat->cols()), "column index");
      cur.expect(':');
      if (!seen.insert({i, j}).second) fail(lineno, ic, "duplicate entry (" + std::to_string(i) + "," +
                                                            std::to_string(j) + ")");
      DPPolynomial f;
      if (body.find_first_not_of(" \t0", cur.pos) != std::string::npos) f = parse_poly(*ring, cur);
      try {
        mat->set(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1), std::move(f));
      } catch (const Error& e) {
        fail(lineno, ic, e.what());
      }
      continue;
    } else {
      fail(lineno, kw_col, kw.empty() ? "expected a directive" : "unknown directive '" + kw + "'");
    }
    if (!cur.done()) fail(lineno, cur.col(), "unexpected trailing input");
  }
  ensure_matrix(lineno + 1);
  return *mat;
}

DPMatrix read_dpmatrix_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_dpmatrix(ss.str());
}

std::string render_dpmatrix(const DPMatrix& p) {
  std::ostringstream os;
  const FieldSpec& f = p.field();
  os << "field " << (f.is_prime_field() ? std::to_string(f.characteristic()) : std::string("QQ")) << '\n';
  os << "vars " << p.ring().nvars() << '\n';
  os << "weights";
  for (int w : p.ring().weights()) os << ' ' << w;
  os << "\nrowtwists";
  for (int a : p.row_twists()) os << ' ' << a;
  os << "\ncoltwists";
  for (int b : p.col_twists()) os << ' ' << b;
  os << '\n';
  for (std::size_t i = 0; i < p.rows(); ++i)
    for (std::size_t j = 0; j < p.cols(); ++j)
      if (!p.entry(i, j).is_zero())
        os << "entry " << i + 1 << ' ' << j + 1 << " : " << p.entry(i, j).to_string() << '\n';
  return os.str();
}

}  // namespace dpres
