#include "gtz/symbols.hpp"

#include <algorithm>
#include <cmath>

namespace gtz {

namespace {

constexpr cplx I{0.0, 1.0};

std::shared_ptr<const Symbol> share(Symbol s) { return std::make_shared<const Symbol>(std::move(s)); }

Symbol univariate(std::string id, std::function<cplx(double)> f) {
  return Symbol(std::move(id), 1, [f = std::move(f)](std::span<const double> t) { return f(t[0]); });
}

Symbol test2_f1() {
  return univariate("test2_f1", [](double x) {
    return x / (1.0 + x * x) + I * (1.0 - x) / (1.0 + 2.0 * x * x);
  });
}

Symbol test2_f2() {
  return univariate("test2_f2", [](double x) {
    return (2.0 + x) / (3.0 + x * x) + I * x * x / (1.0 + x * x);
  });
}

// f(x, y) = 3 + x + i y^2
Symbol test4_f1() {
  const auto one = share(constant_symbol(1.0));
  const auto x = share(algebraic_symbol("x", AlgebraicPoly{{0.0, 1.0}}));
  const auto y2 = share(algebraic_symbol("x^2", AlgebraicPoly{{0.0, 0.0, 1.0}}));
  Symbol s("test4_f1", 2, [](std::span<const double> t) { return 3.0 + t[0] + I * t[1] * t[1]; });
  return s.with_separable({{3.0, one, one}, {1.0, x, one}, {I, one, y2}});
}

// f(x, y) = y / (1 + x^2) + i (1 - x) / (1 + y^2)
Symbol test4_f2() {
  const auto lorentz = share(univariate("1/(1+x^2)", [](double x) { return cplx(1.0 / (1.0 + x * x)); })
                                 .with_real_valued(true)
                                 .with_sup_bound(1.0));
  const auto y = share(algebraic_symbol("x", AlgebraicPoly{{0.0, 1.0}}));
  const auto one_minus_x = share(algebraic_symbol("1-x", AlgebraicPoly{{1.0, -1.0}}));
  Symbol s("test4_f2", 2, [](std::span<const double> t) {
    return t[1] / (1.0 + t[0] * t[0]) + I * (1.0 - t[0]) / (1.0 + t[1] * t[1]);
  });
  return s.with_separable({{1.0, lorentz, y}, {I, one_minus_x, lorentz}});
}

Symbol twocos() {
  TrigPoly p;
  p.arity = 1;
  p.degree = 1;
  p.coeffs = CoeffTable(Levels{-1}, Levels{1}, CoeffSource::exact);
  p.coeffs.ref(Levels{-1}) = 1.0;
  p.coeffs.ref(Levels{1}) = 1.0;
  return p.as_symbol("twocos");
}

// Parses the numeric tail of "mode:k" / "const:v" ids.
bool parse_int(const std::string& s, std::int64_t& out) {
  try {
    std::size_t used = 0;
    out = std::stoll(s, &used);
    return used == s.size();
  } catch (const std::exception&) {
    return false;
  }
}

bool parse_double(const std::string& s, double& out) {
  try {
    std::size_t used = 0;
    out = std::stod(s, &used);
    return used == s.size();
  } catch (const std::exception&) {
    return false;
  }
}

} // namespace

Symbol constant_symbol(cplx value, int arity) {
  TrigPoly p;
  p.arity = arity;
  p.degree = 0;
  p.coeffs = CoeffTable(Levels::uniform(arity, 0), Levels::uniform(arity, 0), CoeffSource::exact);
  p.coeffs.ref(Levels::uniform(arity, 0)) = value;
  Symbol s = p.as_symbol(value == cplx(1.0) ? "const" : "const:" + std::to_string(value.real()));
  if (arity == 1) s = s.with_algebraic(AlgebraicPoly{{value}});
  return s;
}

Symbol mode_symbol(std::int64_t k, cplx scale) {
  TrigPoly p;
  p.arity = 1;
  p.degree = static_cast<int>(std::abs(k));
  p.coeffs = CoeffTable(Levels{-p.degree}, Levels{p.degree}, CoeffSource::exact);
  p.coeffs.ref(Levels{k}) = scale;
  return p.as_symbol("mode:" + std::to_string(k));
}

Symbol algebraic_symbol(std::string id, AlgebraicPoly poly) {
  const auto shared = std::make_shared<const AlgebraicPoly>(poly);
  Symbol s(std::move(id), 1, [shared](std::span<const double> t) { return (*shared)(t[0]); });
  bool real = std::all_of(poly.coeffs.begin(), poly.coeffs.end(), [](cplx c) { return c.imag() == 0.0; });
  s = s.with_exact([shared](const Levels& k) { return shared->fourier(k[0]); })
          .with_algebraic(poly)
          .with_real_valued(real);
  return s.with_sup_bound(grid_sup(s, 4096));
}

std::vector<std::string> catalog_ids() {
  return {"test1_f1", "test1_f2", "test2_f1", "test2_f2", "test3_f1", "test3_f2", "test3_f2_conj",
          "test4_f1", "test4_f2", "const", "mode:k", "twocos"};
}

bool is_catalog_id(const std::string& id) {
  try {
    (void)make_symbol(id);
    return true;
  } catch (const UsageError&) {
    return false;
  }
}

Symbol make_symbol(const std::string& id) {
  if (id == "test1_f1") return algebraic_symbol(id, AlgebraicPoly{{1.0, 1.0, I}});
  if (id == "test1_f2") return algebraic_symbol(id, AlgebraicPoly{{1.0, 0.0, -I, 4.0}});
  if (id == "test2_f1") return test2_f1();
  if (id == "test2_f2") return test2_f2();
  if (id == "test3_f1") return mode_symbol(1).renamed(id);
  // 3 exp(2ix): the variant whose products reproduce the all-zero tables.
  if (id == "test3_f2") return mode_symbol(2, 3.0).renamed(id);
  if (id == "test3_f2_conj") return mode_symbol(-2, 3.0).renamed(id);
  if (id == "test4_f1") return test4_f1();
  if (id == "test4_f2") return test4_f2();
  if (id == "const") return constant_symbol(1.0);
  if (id == "const2") return constant_symbol(1.0, 2).renamed(id);
  if (id == "twocos") return twocos();
  if (id.rfind("const:", 0) == 0) {
    double v = 0.0;
    if (parse_double(id.substr(6), v)) return constant_symbol(v).renamed(id);
  }
  if (id.rfind("mode:", 0) == 0) {
    std::int64_t k = 0;
    if (parse_int(id.substr(5), k)) return mode_symbol(k);
  }
  throw UsageError("unknown symbol id '" + id + "'");
}

} // namespace gtz
