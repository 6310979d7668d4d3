#include "acat/diffops.hpp"

#include <algorithm>
#include <sstream>

namespace acat {

std::vector<Rational> fornberg_weights(std::span<const Rational> nodes, const Rational& z,
                                       int k) {
  const int n = static_cast<int>(nodes.size());
  if (n == 0) throw InvalidArgument("fornberg_weights: empty stencil");
  if (k < 0 || k >= n)
    throw InvalidArgument("fornberg_weights: derivative order " + std::to_string(k) +
                          " needs at least " + std::to_string(k + 1) + " nodes");

  // c[j][s]: weight of node j for the s-th derivative.
  std::vector<std::vector<Rational>> c(n, std::vector<Rational>(k + 1, Rational(0)));
  Rational c1 = 1;
  Rational c4 = nodes[0] - z;
  c[0][0] = 1;
  for (int i = 1; i < n; ++i) {
    const int mn = std::min(i, k);
    Rational c2 = 1;
    const Rational c5 = c4;
    c4 = nodes[i] - z;
    for (int j = 0; j < i; ++j) {
      const Rational c3 = nodes[i] - nodes[j];
      if (c3 == 0) throw InvalidArgument("fornberg_weights: repeated node");
      c2 *= c3;
      if (j == i - 1) {
        for (int s = mn; s >= 1; --s) c[i][s] = c1 * (s * c[i - 1][s - 1] - c5 * c[i - 1][s]) / c2;
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (int s = mn; s >= 1; --s) c[j][s] = (c4 * c[j][s] - s * c[j][s - 1]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }

  std::vector<Rational> w(n);
  for (int j = 0; j < n; ++j) w[j] = c[j][k];
  return w;
}

namespace {

DiffFormula make_formula(FormulaKind kind, int p, int k, const Rational& q) {
  DiffFormula f;
  f.kind = kind;
  f.half_width = p;
  f.deriv_order = k;
  f.eval_offset = q;
  const int first = f.first_offset();
  const int size = kind == FormulaKind::centered ? 2 * p + 1 : 2 * p;
  std::vector<Rational> nodes(size);
  for (int j = 0; j < size; ++j) nodes[j] = first + j;
  f.exact = fornberg_weights(nodes, q, k);
  f.coeffs.resize(size);
  for (int j = 0; j < size; ++j) f.coeffs[j] = DiffFormula::to_scalar<double>(f.exact[j]);
  return f;
}

}  // namespace

DiffFormula centered_coeffs(int p, int k) {
  if (p < 1) throw InvalidArgument("centered_coeffs: half-width must be positive");
  if (k < 0 || k > 2 * p)
    throw InvalidArgument("centered_coeffs: derivative order must lie in [0, 2p]");
  return make_formula(FormulaKind::centered, p, k, Rational(0));
}

DiffFormula interpolatory_coeffs(int p, int k, const Rational& q) {
  if (p < 1) throw InvalidArgument("interpolatory_coeffs: half-width must be positive");
  if (k < 0 || k > 2 * p - 1)
    throw InvalidArgument("interpolatory_coeffs: derivative order must lie in [0, 2p-1]");
  return make_formula(FormulaKind::interpolatory, p, k, q);
}

FormulaTable::FormulaTable(int max_p) : max_p_(max_p) {
  if (max_p < 1) throw InvalidArgument("FormulaTable: max half-width must be positive");
  for (int p = 1; p <= max_p; ++p) {
    for (int k = 0; k <= 2 * p; ++k) centered_.emplace(std::pair{p, k}, centered_coeffs(p, k));
    interface_.emplace(p, interface_coeffs(p));
    for (int k = 0; k <= 2 * p - 1; ++k) {
      interpolatory_.emplace(std::array{p, k, 1}, interpolatory_coeffs(p, k, Rational(1, 2)));
      for (int q = -p + 1; q <= p; ++q)
        interpolatory_.emplace(std::array{p, k, 2 * q}, interpolatory_coeffs(p, k, Rational(q)));
    }
  }
}

const DiffFormula& FormulaTable::centered(int p, int k) const {
  auto it = centered_.find({p, k});
  if (it == centered_.end())
    throw InvalidArgument("FormulaTable: no centered formula for p=" + std::to_string(p) +
                          ", k=" + std::to_string(k));
  return it->second;
}

const DiffFormula& FormulaTable::interpolatory_twice(int p, int k, int twice_q) const {
  auto it = interpolatory_.find({p, k, twice_q});
  if (it == interpolatory_.end())
    throw InvalidArgument("FormulaTable: no interpolatory formula for p=" + std::to_string(p) +
                          ", k=" + std::to_string(k) + ", 2q=" + std::to_string(twice_q));
  return it->second;
}

const DiffFormula& FormulaTable::interface(int p) const {
  auto it = interface_.find(p);
  if (it == interface_.end())
    throw InvalidArgument("FormulaTable: no interface formula for p=" + std::to_string(p));
  return it->second;
}

DiffFormula interface_coeffs(int p) {
  const DiffFormula d = centered_coeffs(p, 1);
  DiffFormula f;
  f.kind = FormulaKind::interpolatory;
  f.half_width = p;
  f.deriv_order = 0;
  f.eval_offset = Rational(1, 2);
  f.exact.assign(2 * p, Rational(0));
  // g_{l+1} = g_l - d_l, starting from g_{-p} = 0
  Rational g = 0;
  for (int l = -p; l < p; ++l) {
    g -= d.exact[l + p];
    f.exact[l + p] = g;
  }
  for (const auto& w : f.exact) f.coeffs.push_back(DiffFormula::to_scalar<double>(w));
  return f;
}

const FormulaTable& formulas() {
  static const FormulaTable table(kDefaultMaxHalfWidth);
  return table;
}

std::string to_string(const Rational& r) {
  std::ostringstream os;
  os << r;
  return os.str();
}

Rational parse_rational(const std::string& text) {
  auto integer = [&](const std::string& s) {
    if (s.empty() || s.find_first_not_of("+-0123456789") != std::string::npos ||
        s.find_first_of("+-", 1) != std::string::npos)
      throw InvalidArgument("cannot parse '" + text + "' as a rational number");
    return boost::multiprecision::cpp_int(s[0] == '+' ? s.substr(1) : s);
  };
  if (const auto slash = text.find('/'); slash != std::string::npos) {
    const auto den = integer(text.substr(slash + 1));
    if (den == 0) throw InvalidArgument("rational '" + text + "' has a zero denominator");
    return Rational(integer(text.substr(0, slash)), den);
  }
  if (const auto dot = text.find('.'); dot != std::string::npos) {
    const std::string frac = text.substr(dot + 1);
    if (frac.size() > 18) throw InvalidArgument("too many digits in '" + text + "'");
    std::string whole = text.substr(0, dot);
    const bool negative = !whole.empty() && whole[0] == '-';
    if (whole.empty() || whole == "-" || whole == "+") whole += "0";
    boost::multiprecision::cpp_int scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    Rational r(integer(whole));
    if (!frac.empty()) {
      const Rational part(integer(frac), scale);
      r += negative ? Rational(-part) : part;
    }
    return r;
  }
  return Rational(integer(text));
}

}  // namespace acat
