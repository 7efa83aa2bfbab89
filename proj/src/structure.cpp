#include "gtz/structure.hpp"

#include <array>
#include <cstring>
#include <istream>
#include <ostream>
#include <sstream>

namespace gtz {

std::pair<Levels, Levels> required_box(const Levels& n, const Levels& g) {
  if (n.arity() != g.arity() || n.arity() == 0) throw UsageError("size and stride vectors must have equal arity");
  Levels lo = Levels::uniform(n.arity(), 0), hi = Levels::uniform(n.arity(), 0);
  for (int j = 0; j < n.arity(); ++j) {
    if (n[j] < 1) throw UsageError("level size must be at least 1");
    if (g[j] < 0) throw UsageError("stride must be nonnegative");
    lo[j] = -g[j] * (n[j] - 1);
    hi[j] = n[j] - 1;
  }
  return {lo, hi};
}

namespace {

void require_coverage(const CoeffTable& table, const Levels& n, const Levels& g) {
  const auto [lo, hi] = required_box(n, g);
  if (table.arity() != n.arity()) throw UsageError("coefficient table arity does not match size vector");
  if (table.covers(lo, hi)) return;
  std::ostringstream os;
  os << "coefficient table covers [";
  for (int j = 0; j < n.arity(); ++j) os << (j ? " x " : "") << table.lo()[j] << ".." << table.hi()[j];
  os << "] but T_{n,g} with n=" << n.to_string() << ", g=" << g.to_string() << " needs [";
  for (int j = 0; j < n.arity(); ++j) os << (j ? " x " : "") << lo[j] << ".." << hi[j];
  os << "]; missing:";
  for (int j = 0; j < n.arity(); ++j) {
    if (lo[j] < table.lo()[j]) os << " dim" << j << " " << lo[j] << ".." << table.lo()[j] - 1;
    if (hi[j] > table.hi()[j]) os << " dim" << j << " " << table.hi()[j] + 1 << ".." << hi[j];
  }
  throw UsageError(os.str());
}

} // namespace

GMatrix build_g_toeplitz(const CoeffTable& table, const Levels& n, const Levels& g, const std::string& symbol_id) {
  require_coverage(table, n, g);
  const std::int64_t order = n.product();
  GMatrix out{Matrix(order, order), n, g, (g.all_equal(1) ? "toeplitz(" : "gtoeplitz(") + symbol_id + ")"};
  if (n.arity() == 1) {
    for (std::int64_t s = 0; s < n[0]; ++s)
      for (std::int64_t r = 0; r < n[0]; ++r) out.data(r, s) = table.at(r - g[0] * s);
    return out;
  }
  const std::int64_t n1 = n[0], n2 = n[1];
  for (std::int64_t s1 = 0; s1 < n1; ++s1)
    for (std::int64_t s2 = 0; s2 < n2; ++s2) {
      const std::int64_t col = s1 * n2 + s2;
      for (std::int64_t r1 = 0; r1 < n1; ++r1) {
        const std::int64_t k1 = r1 - g[0] * s1;
        for (std::int64_t r2 = 0; r2 < n2; ++r2) out.data(r1 * n2 + r2, col) = table.at(k1, r2 - g[1] * s2);
      }
    }
  return out;
}

GMatrix build_toeplitz(const CoeffTable& table, const Levels& n, const std::string& symbol_id) {
  return build_g_toeplitz(table, n, Levels::uniform(n.arity(), 1), symbol_id);
}

GMatrix build_g_toeplitz(const Symbol& sym, const Levels& n, const Levels& g) {
  const auto [lo, hi] = required_box(n, g);
  return build_g_toeplitz(fourier_coefficients(sym, lo, hi), n, g, sym.id());
}

Selection build_selection(std::int64_t n, std::int64_t g) {
  if (g <= 0) throw UsageError("selection matrix is undefined for g = " + std::to_string(g));
  if (n < 1) throw UsageError("selection matrix needs n >= 1");
  Selection sel;
  sel.mu = (n + g - 1) / g;
  sel.z = GMatrix{Matrix::Zero(n, n), Levels{n}, Levels{g}, "selection"};
  for (std::int64_t s = 0; s < n; ++s)
    for (std::int64_t r = 0; r < n; ++r) {
      const std::int64_t k = r - g * s;
      if (k % n == 0) sel.z.data(r, s) = 1.0;
    }
  sel.zhat_padded = GMatrix{Matrix::Zero(n, n), Levels{n}, Levels{g}, "selection"};
  sel.zhat_padded.data.leftCols(sel.mu) = sel.z.data.leftCols(sel.mu);
  return sel;
}

namespace {

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

} // namespace

Selection build_selection(const Levels& n, const Levels& g) {
  if (n.arity() != g.arity()) throw UsageError("size and stride vectors must have equal arity");
  Selection acc = build_selection(n[0], g[0]);
  for (int j = 1; j < n.arity(); ++j) {
    const Selection level = build_selection(n[j], g[j]);
    acc.z.data = kron(acc.z.data, level.z.data);
    acc.zhat_padded.data = kron(acc.zhat_padded.data, level.zhat_padded.data);
    acc.mu *= level.mu;
  }
  acc.z.n = acc.zhat_padded.n = n;
  acc.z.g = acc.zhat_padded.g = g;
  return acc;
}

Decomposition decompose_eq11(const CoeffTable& table, std::int64_t n, std::int64_t g) {
  if (table.arity() != 1) throw UsageError("decomposition is defined for unilevel tables only");
  if (g < 1) throw UsageError("decomposition needs g >= 1");
  const Levels nv{n}, gv{g};
  require_coverage(table, nv, gv);
  const GMatrix tg = build_g_toeplitz(table, nv, gv);
  const GMatrix t = build_toeplitz(table, nv);
  const Selection sel = build_selection(n, g);
  Decomposition out;
  out.left = GMatrix{t.data * sel.zhat_padded.data, nv, gv, "derived"};
  out.right = GMatrix{Matrix::Zero(n, n), nv, gv, "derived"};
  out.right.data.rightCols(n - sel.mu) = tg.data.rightCols(n - sel.mu);
  return out;
}

GMatrix multiply(const GMatrix& a, const GMatrix& b) {
  if (a.order() != b.order()) throw UsageError("matrix orders differ in product");
  GMatrix out{Matrix(a.order(), a.order()), a.n, a.g, "product(" + a.origin + "," + b.origin + ")"};
  out.data.noalias() = a.data * b.data;
  return out;
}

GMatrix derived(Matrix data, std::string origin) {
  if (data.rows() != data.cols()) throw UsageError("GMatrix must be square");
  const std::int64_t order = data.rows();
  return GMatrix{std::move(data), Levels{order}, Levels{1}, std::move(origin)};
}

namespace {

constexpr std::array<char, 4> kMagic = {'G', 'T', 'P', 'Z'};

void put_u32(std::ostream& os, std::uint32_t v) {
  const unsigned char b[4] = {static_cast<unsigned char>(v), static_cast<unsigned char>(v >> 8),
                              static_cast<unsigned char>(v >> 16), static_cast<unsigned char>(v >> 24)};
  os.write(reinterpret_cast<const char*>(b), 4);
}

std::uint32_t get_u32(std::istream& is) {
  unsigned char b[4] = {};
  is.read(reinterpret_cast<char*>(b), 4);
  if (!is) throw IoError("truncated GTPZ header");
  return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
         (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

void put_f64(std::ostream& os, double v) {
  std::uint64_t bits = 0;
  std::memcpy(&bits, &v, sizeof bits);
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(bits >> (8 * i));
  os.write(reinterpret_cast<const char*>(b), 8);
}

double get_f64(std::istream& is) {
  unsigned char b[8] = {};
  is.read(reinterpret_cast<char*>(b), 8);
  if (!is) throw IoError("truncated GTPZ payload");
  std::uint64_t bits = 0;
  for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  double v = 0.0;
  std::memcpy(&v, &bits, sizeof v);
  return v;
}

} // namespace

void write_binary(const GMatrix& m, std::ostream& os) {
  os.write(kMagic.data(), 4);
  const int d = m.n.arity();
  put_u32(os, static_cast<std::uint32_t>(d));
  for (int j = 0; j < 2; ++j) put_u32(os, j < d ? static_cast<std::uint32_t>(m.n[j]) : 0u);
  for (int j = 0; j < 2; ++j) put_u32(os, j < d ? static_cast<std::uint32_t>(m.g[j]) : 0u);
  put_u32(os, 0);
  put_u32(os, 0);
  for (Eigen::Index r = 0; r < m.data.rows(); ++r)
    for (Eigen::Index c = 0; c < m.data.cols(); ++c) {
      put_f64(os, m.data(r, c).real());
      put_f64(os, m.data(r, c).imag());
    }
  if (!os) throw IoError("failed writing GTPZ matrix");
}

GMatrix read_binary(std::istream& is) {
  std::array<char, 4> magic{};
  is.read(magic.data(), 4);
  if (!is || magic != kMagic) throw IoError("not a GTPZ matrix file");
  const std::uint32_t d = get_u32(is);
  if (d < 1 || d > 2) throw IoError("GTPZ header has invalid arity");
  std::uint32_t n[2] = {get_u32(is), get_u32(is)};
  std::uint32_t g[2] = {get_u32(is), get_u32(is)};
  (void)get_u32(is);
  (void)get_u32(is);
  GMatrix m;
  m.n = d == 1 ? Levels{n[0]} : Levels{n[0], n[1]};
  m.g = d == 1 ? Levels{g[0]} : Levels{g[0], g[1]};
  m.origin = "derived";
  const std::int64_t order = m.n.product();
  m.data.resize(order, order);
  for (std::int64_t r = 0; r < order; ++r)
    for (std::int64_t c = 0; c < order; ++c) {
      const double re = get_f64(is);
      const double im = get_f64(is);
      m.data(r, c) = cplx(re, im);
    }
  return m;
}

void write_csv(const GMatrix& m, std::ostream& os) {
  if (m.order() > 64) throw UsageError("CSV export is limited to order <= 64");
  os.precision(17);
  for (Eigen::Index r = 0; r < m.data.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.data.cols(); ++c) {
      const cplx v = m.data(r, c);
      if (c) os << ',';
      os << v.real() << (v.imag() < 0 || std::signbit(v.imag()) ? "" : "+") << v.imag() << 'i';
    }
    os << '\n';
  }
}

} // namespace gtz
