#include "xnr/cnf.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>
#include <stdexcept>

#include "xnr/errors.hpp"

namespace xnr {

void CnfFormula::check() const {
  for (std::size_t i = 0; i < clauses.size(); ++i) {
    if (clauses[i].empty()) throw std::invalid_argument("clause " + std::to_string(i + 1) + " is empty");
    for (int lit : clauses[i]) {
      if (lit == 0 || static_cast<std::size_t>(std::abs(lit)) > num_vars) {
        throw std::invalid_argument("clause " + std::to_string(i + 1) + " mentions variable " +
                                    std::to_string(lit) + " outside 1.." + std::to_string(num_vars));
      }
    }
  }
}

bool CnfFormula::evaluate(const Instance& x) const {
  for (const auto& clause : clauses) {
    bool sat = false;
    for (int lit : clause) {
      if (x.feature(static_cast<std::uint32_t>(std::abs(lit))) == (lit > 0)) {
        sat = true;
        break;
      }
    }
    if (!sat) return false;
  }
  return true;
}

bool brute_force_sat(const CnfFormula& f, std::size_t bound) {
  if (f.num_vars > bound) throw BoundExceeded("brute-force SAT", f.num_vars, bound);
  f.check();
  const std::uint64_t count = std::uint64_t{1} << f.num_vars;
  for (std::uint64_t a = 0; a < count; ++a) {
    bool all = true;
    for (const auto& clause : f.clauses) {
      bool sat = false;
      for (int lit : clause) {
        const bool value = (a >> (std::abs(lit) - 1)) & 1U;
        if (value == (lit > 0)) {
          sat = true;
          break;
        }
      }
      if (!sat) {
        all = false;
        break;
      }
    }
    if (all) return true;
  }
  return false;
}

namespace {

class DimacsReader {
 public:
  explicit DimacsReader(std::string_view text) : text_(text) {}

  CnfFormula read() {
    CnfFormula f;
    bool header = false;
    std::size_t declared = 0;
    std::vector<int> clause;
    while (true) {
      skip_space();
      if (pos_ >= text_.size()) break;
      const char c = text_[pos_];
      if (c == 'c' || c == '%') {
        skip_line();
        continue;
      }
      if (c == 'p') {
        if (header) throw ParseError("duplicate problem line", pos_);
        ++pos_;
        skip_space();
        if (text_.substr(pos_, 3) != "cnf") throw ParseError("expected 'cnf'", pos_);
        pos_ += 3;
        f.num_vars = static_cast<std::size_t>(number());
        declared = static_cast<std::size_t>(number());
        header = true;
        continue;
      }
      if (!header) throw ParseError("clause before the 'p cnf' line", pos_);
      const std::size_t at = pos_;
      const long long lit = number();
      if (lit == 0) {
        if (clause.empty()) throw ParseError("empty clause", at);
        f.clauses.push_back(std::move(clause));
        clause.clear();
        continue;
      }
      if (static_cast<std::size_t>(std::llabs(lit)) > f.num_vars) {
        throw ParseError("variable " + std::to_string(lit) + " exceeds the declared count", at);
      }
      clause.push_back(static_cast<int>(lit));
    }
    if (!header) throw ParseError("missing 'p cnf' line", pos_);
    if (!clause.empty()) throw ParseError("last clause is not terminated by 0", pos_);
    if (f.clauses.size() != declared) {
      throw ParseError("expected " + std::to_string(declared) + " clauses, found " +
                           std::to_string(f.clauses.size()),
                       pos_);
    }
    return f;
  }

 private:
  long long number() {
    skip_space();
    const std::size_t start = pos_;
    long long v = 0;
    const char* first = text_.data() + pos_;
    const char* last = text_.data() + text_.size();
    if (first != last && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc()) throw ParseError("expected an integer", start);
    pos_ = static_cast<std::size_t>(ptr - text_.data());
    if (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      throw ParseError("expected whitespace after integer", pos_);
    }
    if (v < INT32_MIN + 1 || v > INT32_MAX) throw ParseError("integer out of range", start);
    return v;
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  void skip_line() {
    while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

CnfFormula parse_dimacs(std::string_view text) { return DimacsReader(text).read(); }

std::string to_dimacs(const CnfFormula& f) {
  std::string out = "p cnf " + std::to_string(f.num_vars) + " " + std::to_string(f.clauses.size()) + "\n";
  for (const auto& clause : f.clauses) {
    for (int lit : clause) out += std::to_string(lit) + " ";
    out += "0\n";
  }
  return out;
}

Mlp cnf_to_mlp(const CnfFormula& f) {
  f.check();
  if (f.clauses.empty()) throw std::invalid_argument("cnf_to_mlp needs at least one clause");
  if (f.num_vars == 0) throw std::invalid_argument("cnf_to_mlp needs at least one variable");
  const std::size_t m = f.clauses.size();

  MlpLayer hidden;
  hidden.weights.assign(f.num_vars, std::vector<Rational>(m, Rational(0)));
  hidden.bias.assign(m, Rational(1));
  for (std::size_t j = 0; j < m; ++j) {
    for (int lit : f.clauses[j]) {
      const std::size_t i = static_cast<std::size_t>(std::abs(lit)) - 1;
      if (lit > 0) {
        hidden.weights[i][j] -= 1;
      } else {
        // A negative literal contributes 1 - x_i to the clause score.
        hidden.weights[i][j] += 1;
        hidden.bias[j] -= 1;
      }
    }
  }

  MlpLayer output;
  output.weights.assign(m, std::vector<Rational>{Rational(-1)});
  output.bias = {Rational(0)};

  Mlp net;
  net.arity = f.num_vars;
  net.layers = {std::move(hidden), std::move(output)};
  return net;
}

SatUnsatInstance build_satunsat_instance(const CnfFormula& gamma, const CnfFormula& delta) {
  gamma.check();
  delta.check();
  const int p = static_cast<int>(gamma.num_vars);
  const int q = static_cast<int>(delta.num_vars);
  const int g = p + q + 1;
  const int d = p + q + 2;

  CnfFormula psi;
  psi.num_vars = static_cast<std::size_t>(d);
  for (const auto& clause : gamma.clauses) {
    auto c = clause;
    c.push_back(g);
    psi.clauses.push_back(std::move(c));
  }
  for (const auto& clause : delta.clauses) {
    std::vector<int> c;
    for (int lit : clause) c.push_back(lit > 0 ? lit + p : lit - p);
    c.push_back(d);
    psi.clauses.push_back(std::move(c));
  }

  SatUnsatInstance out;
  out.model = cnf_to_mlp(psi);
  out.target = ClassLabel::One;
  out.condition = Condition{Literal(Term::var(static_cast<std::uint32_t>(d)), Op::Eq, Term::constant(true))};
  out.g_feature = static_cast<std::size_t>(g);
  out.d_feature = static_cast<std::size_t>(d);
  return out;
}

}  // namespace xnr
