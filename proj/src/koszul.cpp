#include "dpres/koszul.hpp"

#include <algorithm>
#include <bit>

#include "dpres/error.hpp"

namespace dpres {

std::vector<Subset> exterior_basis(int n, int i) {
  if (n < 0 || n > 30) throw ConfigError("exterior algebra supports at most 30 variables");
  std::vector<Subset> out;
  if (i < 0 || i > n) return out;
  for (Subset s = 0; s < (Subset{1} << n); ++s)
    if (std::popcount(s) == i) out.push_back(s);
  return out;
}

int subset_degree(const Ring& ring, Subset s) {
  int d = 0;
  for (int l = 0; l < ring.nvars(); ++l)
    if (s >> l & 1u) d += ring.weight(l);
  return d;
}

std::string subset_label(Subset s) {
  std::string out = "{";
  bool first = true;
  for (int l = 0; l < 32; ++l)
    if (s >> l & 1u) {
      if (!first) out += ",";
      out += std::to_string(l + 1);
      first = false;
    }
  return out + "}";
}

Subset complement(int n, Subset s) { return ((Subset{1} << n) - 1) & ~s; }

SignedSubset ext_contract(int l, Subset s) {
  if (!(s >> l & 1u)) return {};
  int below = std::popcount(s & ((Subset{1} << l) - 1));
  return {below % 2 == 0 ? 1 : -1, s & ~(Subset{1} << l)};
}

int wedge_sign(Subset a, Subset b) {
  if (a & b) return 0;
  int inversions = 0;
  for (int l = 0; l < 32; ++l)
    if (b >> l & 1u) inversions += std::popcount(a >> l >> 1);
  return inversions % 2 == 0 ? 1 : -1;
}

FreeModule koszul_module(const Ring& ring, int i) {
  FreeModule f;
  for (Subset s : exterior_basis(ring.nvars(), i)) {
    f.twists.push_back(subset_degree(ring, s));
    f.labels.push_back(subset_label(s));
  }
  return f;
}

GradedFreeMatrix koszul_differential(const Ring& ring, int i) {
  const int n = ring.nvars();
  if (i < 1 || i > n) throw ConfigError("Koszul differential index out of range");
  auto src = exterior_basis(n, i), tgt = exterior_basis(n, i - 1);
  GradedFreeMatrix d(ring, koszul_module(ring, i), koszul_module(ring, i - 1));
  for (std::size_t c = 0; c < src.size(); ++c)
    for (int l = 0; l < n; ++l) {
      SignedSubset r = ext_contract(l, src[c]);
      if (r.sign == 0) continue;
      auto row = static_cast<std::size_t>(std::lower_bound(tgt.begin(), tgt.end(), r.set) - tgt.begin());
      d.set(row, c, Polynomial::variable(ring, l).scaled(ring.field().from_int(r.sign)));
    }
  return d;
}

FreeComplex koszul_complex(const Ring& ring) {
  FreeComplex c{ring, {}, {}, std::nullopt};
  for (int i = 0; i <= ring.nvars(); ++i) c.modules.push_back(koszul_module(ring, i));
  for (int i = 1; i <= ring.nvars(); ++i) c.differentials.push_back(koszul_differential(ring, i));
  c.augmentation = Augmentation{residue_field(ring), {ModuleElement{0, {ring.field().one()}}}};
  return c;
}

FreeComplex dual_koszul_complex(const Ring& ring) {
  const int n = ring.nvars(), d = ring.total_weight();
  FreeComplex c{ring, {}, {}, std::nullopt};
  for (int h = 0; h <= n; ++h) c.modules.push_back(koszul_module(ring, n - h).dual(d));
  for (int h = 1; h <= n; ++h) c.differentials.push_back(koszul_differential(ring, n - h + 1).transpose(d));
  c.augmentation = Augmentation{residue_field(ring), {ModuleElement{0, {ring.field().one()}}}};
  return c;
}

GradedFreeMatrix alpha(const Ring& ring, int i) {
  const int n = ring.nvars();
  if (i < 0 || i > n) throw ConfigError("alpha index out of range");
  auto src = exterior_basis(n, i), tgt = exterior_basis(n, n - i);
  Matrix m(ring.field(), tgt.size(), src.size());
  for (std::size_t c = 0; c < src.size(); ++c) {
    Subset comp = complement(n, src[c]);
    auto r = static_cast<std::size_t>(std::lower_bound(tgt.begin(), tgt.end(), comp) - tgt.begin());
    m(r, c) = ring.field().from_int(wedge_sign(comp, src[c]));
  }
  return GradedFreeMatrix::from_constant(ring, koszul_module(ring, i),
                                         koszul_module(ring, n - i).dual(ring.total_weight()), m);
}

int ell_sign(int i) {
  int e = i >= 1 ? (i - 1) / 2 : -((2 - i) / 2);  // floor((i-1)/2)
  return e % 2 == 0 ? 1 : -1;
}

MiddleSymmetry middle_symmetry(int n) {
  if (n < 1 || n % 2 == 0) throw PreconditionError("middle symmetry needs an odd number of variables");
  return n % 4 == 3 ? MiddleSymmetry::Skew : MiddleSymmetry::Symmetric;
}

GradedFreeMatrix koszul_middle_map(const Ring& ring) {
  const int n = ring.nvars();
  middle_symmetry(n);
  const int m = (n - 1) / 2;
  GradedFreeMatrix a = alpha(ring, m + 1);
  auto inv = inverse(a.constant_part());
  if (!inv) throw PreconditionError("alpha is not invertible");
  return koszul_differential(ring, m + 1).times_constant(*inv, a.target());
}

}  // namespace dpres
