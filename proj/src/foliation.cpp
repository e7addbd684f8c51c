#include "weil/foliation.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include <fmt/format.h>

#include "weil/errors.hpp"

namespace weil {

namespace {

int sum(const std::vector<int>& v) { return std::accumulate(v.begin(), v.end(), 0); }

/// Nondecreasing sequences with parts in [min_part, max_part] and sum in [lo, hi],
/// emitted in lexicographic order.
void partitions(int min_part, int max_part, int lo, int hi, std::vector<int>& prefix, int acc,
                const std::function<void(const std::vector<int>&)>& emit) {
  if (acc >= lo && acc <= hi && !prefix.empty()) emit(prefix);
  for (int p = min_part; p <= max_part && acc + p <= hi; ++p) {
    prefix.push_back(p);
    partitions(p, max_part, lo, hi, prefix, acc + p, emit);
    prefix.pop_back();
  }
}

/// Nonempty strictly increasing subsets of [first, last] in lexicographic order.
void subsets(int first, int last, std::vector<int>& prefix, const std::function<void(const std::vector<int>&)>& emit) {
  for (int i = first; i <= last; ++i) {
    prefix.push_back(i);
    emit(prefix);
    subsets(i + 1, last, prefix, emit);
    prefix.pop_back();
  }
}

}  // namespace

int largest_odd_at_most(int q) { return q % 2 == 1 ? q : q - 1; }

WqPresentation build_wq(int q, bool framed) {
  if (q < 1) throw UsageError(fmt::format("codimension q must be >= 1, got {}", q));
  std::vector<Generator> ext;
  std::vector<Generator> poly;
  for (int i = 1; i <= q; ++i) {
    if (framed || i % 2 == 1) ext.push_back({fmt::format("y{}", i), 2 * i - 1});
    poly.push_back({fmt::format("c{}", i), 2 * i});
  }
  auto gens = make_generator_set(std::move(ext), std::move(poly), 2 * q);
  std::vector<std::pair<std::string, Element>> images;
  for (const auto& g : gens->exterior()) {
    const std::string c = "c" + g.name.substr(1);
    images.emplace_back(g.name, Element::generator(gens, c));
  }
  return WqPresentation{q, framed, Differential(gens, images)};
}

Element WqPresentation::y(int i) const {
  const std::string name = fmt::format("y{}", i);
  if (!gens()->find(name)) throw IndexOutOfRange(fmt::format("{} is not a generator of {}W{}", name, framed ? "" : "O", q));
  return Element::generator(gens(), name);
}

Element WqPresentation::c(int i) const {
  const std::string name = fmt::format("c{}", i);
  if (!gens()->find(name)) throw IndexOutOfRange(fmt::format("{} is not a generator of W{}", name, q));
  return Element::generator(gens(), name);
}

int VeyIndex::degree() const {
  int n = 0;
  for (int i : I) n += 2 * i - 1;
  for (int j : J) n += 2 * j;
  return n;
}

bool VeyIndex::well_formed(int q) const {
  for (std::size_t a = 0; a < I.size(); ++a)
    if (I[a] < 1 || I[a] > q || (a > 0 && I[a] <= I[a - 1])) return false;
  for (std::size_t b = 0; b < J.size(); ++b)
    if (J[b] < 1 || J[b] > q || (b > 0 && J[b] < J[b - 1])) return false;
  return true;
}

std::string VeyIndex::to_string() const {
  if (is_unit()) return "1";
  std::string out;
  for (int i : I) out += fmt::format("{}y{}", out.empty() ? "" : " ", i);
  for (std::size_t b = 0; b < J.size();) {
    std::size_t e = b;
    while (e < J.size() && J[e] == J[b]) ++e;
    out += fmt::format("{}c{}", out.empty() ? "" : " ", J[b]);
    if (e - b > 1) out += fmt::format("^{}", e - b);
    b = e;
  }
  return out;
}

Element VeyIndex::monomial(const WqPresentation& w) const {
  if (!well_formed(w.q)) throw UsageError("malformed index " + to_string() + fmt::format(" for q = {}", w.q));
  Element x = Element::unit(w.gens());
  for (int i : I) x = x * w.y(i);
  for (int j : J) x = x * w.c(j);
  return x;
}

bool is_vey(const VeyIndex& v, int q) {
  if (!v.well_formed(q)) return false;
  if (v.is_unit()) return true;
  if (v.I.empty() || v.J.empty()) return false;
  const int sj = sum(v.J);
  return sj <= q && v.I.front() + sj >= q + 1 && v.I.front() <= v.J.front();
}

bool is_rigid(const VeyIndex& v, int q) {
  if (!is_vey(v, q)) throw UsageError(v.to_string() + fmt::format(" is not a Vey index for q = {}", q));
  if (v.is_unit()) return false;
  return v.I.front() + sum(v.J) >= q + 2;
}

std::vector<VeyIndex> vey_basis(int q, std::optional<DegreeRange> degrees) {
  if (q < 1) throw UsageError(fmt::format("codimension q must be >= 1, got {}", q));
  std::vector<VeyIndex> out;
  std::vector<int> iprefix;
  subsets(1, q, iprefix, [&](const std::vector<int>& I) {
    const int i1 = I.front();
    std::vector<int> jprefix;
    partitions(i1, q, q + 1 - i1, q, jprefix, 0, [&](const std::vector<int>& J) {
      VeyIndex v{I, J};
      const int n = v.degree();
      if (degrees && (n < degrees->lo || n > degrees->hi)) return;
      out.push_back(std::move(v));
    });
  });
  return out;
}

std::vector<RigidFamilyEntry> enumerate_rqs(int q) {
  if (q < 4 || q % 2 != 0) throw OddCodimension(fmt::format("the rigid families need even q >= 4, got {}", q));
  const int m = q / 2;
  const int bound = (q + 2) / 4;
  std::vector<RigidFamilyEntry> out;

  const std::vector<int> c2(static_cast<std::size_t>(m), 2);
  out.push_back({VeyIndex{{2}, c2}, 0, RigidFamily::A});
  std::vector<int> kprefix;
  subsets(2, bound, kprefix, [&](const std::vector<int>& ks) {
    VeyIndex v{{2}, c2};
    for (int k : ks) v.I.push_back(2 * k);
    out.push_back({std::move(v), 0, RigidFamily::A});
  });
  if (q % 4 == 2) {
    const int k = (q + 2) / 4;
    out.push_back({VeyIndex{{2 * k}, {2 * k}}, 0, RigidFamily::B});
  }

  for (auto& e : out) e.degree = e.index.degree();
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.degree < b.degree; });
  for (const auto& e : out) {
    if (!is_vey(e.index, q) || !is_rigid(e.index, q))
      throw InvariantViolation(fmt::format("family entry {} is not a rigid Vey index for q = {}", e.index.to_string(), q));
  }
  return out;
}

std::vector<RigidCountRow> rigid_count_table(int q_max) {
  if (q_max < 1) throw UsageError(fmt::format("q_max must be >= 1, got {}", q_max));
  std::vector<RigidCountRow> rows;
  for (int q = 1; q <= q_max; ++q) {
    RigidCountRow row;
    row.q = q;
    // The rest of I is any subset of (i1, q]; count (i1, J) pairs and scale.
    for (int i1 = 1; i1 <= q; ++i1) {
      std::size_t js = 0;
      std::vector<int> jprefix;
      partitions(i1, q, q + 2 - i1, q, jprefix, 0, [&](const std::vector<int>&) { ++js; });
      Integer tail;
      mpz_ui_pow_ui(tail.get_mpz_t(), 2, static_cast<unsigned long>(q - i1));
      row.rigid_vey += tail * static_cast<unsigned long>(js);
    }
    if (q >= 4 && q % 2 == 0) {
      for (const auto& e : enumerate_rqs(q)) {
        (e.family == RigidFamily::A ? row.family_a : row.family_b) += 1;
        row.degrees.push_back(e.degree);
      }
      std::sort(row.degrees.begin(), row.degrees.end());
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace weil
