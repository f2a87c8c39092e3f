#include <algorithm>
#include <map>
#include <set>

#include "hypcount/curve_lab.hpp"
#include "hypcount/errors.hpp"

namespace hypcount {

using kpoly::Elem;
using kpoly::Poly;

namespace {

std::uint64_t encode(const Poly& p, std::size_t len, std::uint64_t q) {
  std::uint64_t code = 0;
  for (std::size_t i = len; i-- > 0;) code = code * q + kpoly::coeff(p, i);
  return code;
}

Poly padded(Poly p, std::size_t len) {
  p.resize(len, 0);
  return p;
}

struct QgIndex {
  int genus;
  std::size_t hlen, flen;
  std::vector<Poly> hs;  // nonzero h of length hlen
  std::vector<Poly> fs;  // all f of length flen
  std::vector<Poly> ls;  // all l of degree <= g+1
};

QgIndex make_index(const FiniteField& k, int genus) {
  QgIndex idx{genus, static_cast<std::size_t>(genus + 2), static_cast<std::size_t>(2 * genus + 3), {}, {}, {}};
  for (auto& h : kpoly::all_of_length(k, static_cast<unsigned>(idx.hlen))) {
    if (kpoly::degree(h) >= 0) idx.hs.push_back(h);
  }
  idx.fs = kpoly::all_of_length(k, static_cast<unsigned>(idx.flen));
  idx.ls = kpoly::all_of_length(k, static_cast<unsigned>(idx.hlen));
  return idx;
}

// Orbit {f + h l + l^2} as sorted f-codes.
std::vector<std::uint64_t> orbit(const FiniteField& k, const QgIndex& idx, const Poly& h, const Poly& f) {
  std::vector<std::uint64_t> out;
  out.reserve(idx.ls.size());
  for (const auto& l : idx.ls) {
    const Poly g = kpoly::add(k, f, kpoly::add(k, kpoly::mul(k, h, l), kpoly::mul(k, l, l)));
    out.push_back(encode(g, idx.flen, k.size()));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Class id of (h, f) in Q_g: (h code, smallest f code in the orbit).
std::pair<std::uint64_t, std::uint64_t> class_id(const FiniteField& k, const QgIndex& idx, const Poly& h, const Poly& f) {
  return {encode(h, idx.hlen, k.size()), orbit(k, idx, h, f).front()};
}

Poly singular_part(const FiniteField& k, const Poly& h, const Poly& f) {
  const Poly fd = kpoly::derivative(k, f), hd = kpoly::derivative(k, h);
  return kpoly::add(k, kpoly::mul(k, fd, fd), kpoly::mul(k, f, kpoly::mul(k, hd, hd)));
}

}  // namespace

ClassProbeReport equivalence_class_probe(const CurveLab& lab, int genus, bool full) {
  if (lab.parity() != Parity::Even) throw std::domain_error("class probe needs characteristic two");
  if (genus < -1) throw std::invalid_argument("class probe needs genus >= -1");
  const FiniteField& k = lab.base();
  const std::uint64_t q = k.size();
  ClassProbeReport rep;
  rep.genus = genus;
  const QgIndex idx = make_index(k, genus);
  const std::uint64_t size = static_cast<std::uint64_t>(idx.hs.size()) * idx.fs.size();
  if (size * idx.ls.size() > lab.budget().max_curves) throw BudgetExceeded("class probe exceeds the curve budget");
  rep.q_size = size;

  std::uint64_t expected = 1;
  for (std::size_t i = 0; i < idx.hlen; ++i) expected *= q;
  expected /= 2;

  std::set<std::pair<std::uint64_t, std::uint64_t>> classes;
  rep.class_sizes_ok = true;
  for (const auto& h : idx.hs) {
    std::set<std::uint64_t> seen;
    for (const auto& f : idx.fs) {
      const std::uint64_t code = encode(f, idx.flen, q);
      if (seen.count(code)) continue;
      const auto orb = orbit(k, idx, h, f);
      if (orb.size() != expected) rep.class_sizes_ok = false;
      // orbits of a group action never overlap partially
      for (auto c : orb) {
        if (!seen.insert(c).second) rep.class_sizes_ok = false;
      }
      classes.insert({encode(h, idx.hlen, q), orb.front()});
    }
  }
  rep.classes = classes.size();
  if (!full) {
    rep.vz_disjoint = rep.vz_cover = rep.vz_well_defined = rep.reform_ok = true;
    return rep;
  }

  // V_z for z in P_i / ~_i, -1 <= i <= g.
  std::set<std::pair<std::uint64_t, std::uint64_t>> covered;
  rep.vz_disjoint = true;
  rep.vz_well_defined = true;
  for (int i = -1; i <= genus; ++i) {
    const QgIndex sub = make_index(k, i);
    std::vector<Poly> ms;
    for (int d = 0; d <= genus - i; ++d) {
      for (auto& m : kpoly::monic_of_degree(k, static_cast<unsigned>(d))) ms.push_back(m);
    }
    std::set<std::pair<std::uint64_t, std::uint64_t>> done;
    for (const auto& h : sub.hs) {
      for (const auto& f : sub.fs) {
        if (!lab.in_Pg(EvenCurve{i, h, f})) continue;
        const auto z = class_id(k, sub, h, f);
        if (!done.insert(z).second) continue;
        ++rep.vz_sets;
        auto vz_of = [&](const Poly& hh, const Poly& ff) {
          std::set<std::pair<std::uint64_t, std::uint64_t>> vz;
          for (const auto& m : ms) {
            Poly mh = padded(kpoly::mul(k, m, hh), idx.hlen);
            Poly mf = padded(kpoly::mul(k, kpoly::mul(k, m, m), ff), idx.flen);
            vz.insert(class_id(k, idx, mh, mf));
          }
          return vz;
        };
        const auto vz = vz_of(h, f);
        // every member of z yields the same set
        for (auto code : orbit(k, sub, h, f)) {
          Poly member(sub.flen);
          std::uint64_t c = code;
          for (std::size_t j = 0; j < sub.flen; ++j) {
            member[j] = static_cast<Elem>(c % q);
            c /= q;
          }
          if (vz_of(h, member) != vz) rep.vz_well_defined = false;
        }
        rep.vz_total += vz.size();
        for (const auto& cls : vz) {
          if (!covered.insert(cls).second) rep.vz_disjoint = false;
        }
      }
    }
  }
  rep.vz_cover = covered == classes;

  // Both divisibility criteria agree for every (h, f) in Q_g and monic
  // irreducible m of degree <= g + 1, with l ranging over degree <= g + 1.
  std::vector<Poly> irreducibles;
  for (int d = 1; d <= genus + 1; ++d) {
    for (auto& m : kpoly::monic_of_degree(k, static_cast<unsigned>(d))) {
      if (kpoly::irreducible(k, m)) irreducibles.push_back(m);
    }
  }
  rep.reform_ok = true;
  for (const auto& h : idx.hs) {
    for (const auto& f : idx.fs) {
      Poly ht = h, ft = f;
      kpoly::trim(ht);
      kpoly::trim(ft);
      const Poly d = singular_part(k, ht, ft);
      for (const auto& m : irreducibles) {
        ++rep.reform_triples;
        const bool first = kpoly::divides(k, m, ht) && kpoly::divides(k, m, d);
        bool second = false;
        if (kpoly::divides(k, m, ht)) {
          const Poly m2 = kpoly::mul(k, m, m);
          for (const auto& l : idx.ls) {
            const Poly g = kpoly::add(k, ft, kpoly::add(k, kpoly::mul(k, ht, l), kpoly::mul(k, l, l)));
            if (kpoly::divides(k, m2, g)) {
              second = true;
              break;
            }
          }
        }
        if (first != second) rep.reform_ok = false;
      }
    }
  }
  return rep;
}

}  // namespace hypcount
