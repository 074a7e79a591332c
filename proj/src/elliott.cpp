#include "cdiag/elliott.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace cdiag {

namespace {

void require_af(const Diagram& d, const char* name) {
  require_valid(d);
  for (const auto& level : d.levels) {
    for (const auto& s : level) {
      if (s.base != Base::Point) {
        throw std::invalid_argument(std::string("build_intertwining: diagram ") + name +
                                    " is not an AF (point-base) tower");
      }
    }
  }
}

AlgebraShape shape_at(const Diagram& d, int level) {
  return AlgebraShape(size_vector(d, level));
}

IntMatrix column_of(const std::vector<long long>& v) {
  IntMatrix out;
  for (long long x : v) out.push_back({x});
  return out;
}

MultiplicityMatrix as_mult(const IntMatrix& m) { return MultiplicityMatrix{m}; }

std::vector<MatrixUnitRef> probe_units(const AlgebraShape& shape) {
  long long unit_count = 0;
  for (long long n : shape.sizes) unit_count += n * n;
  std::vector<MatrixUnitRef> out;
  for (int j = 0; j < shape.summands(); ++j) {
    const long long n = shape.sizes[static_cast<std::size_t>(j)];
    if (unit_count <= 144) {
      for (long long p = 1; p <= n; ++p) {
        for (long long q = 1; q <= n; ++q) out.push_back({j, p, q});
      }
    } else {
      // Diagonal and adjacent off-diagonal units generate each summand;
      // equality of *-homomorphisms on them implies equality everywhere.
      for (long long p = 1; p <= n; ++p) out.push_back({j, p, p});
      for (long long p = 1; p < n; ++p) {
        out.push_back({j, p, p + 1});
        out.push_back({j, p + 1, p});
      }
    }
  }
  return out;
}

}  // namespace

IntertwiningResult build_intertwining(const Diagram& A, const Diagram& B,
                                      const std::optional<IntMatrix>& seed, int depth,
                                      int search_bound) {
  if (depth < 1) throw std::invalid_argument("build_intertwining: depth must be >= 1");
  const Diagram a = materialize(A, search_bound + 1);
  const Diagram b = materialize(B, search_bound + 1);
  require_af(a, "A");
  require_af(b, "B");

  std::vector<int> stagesA{0};
  std::vector<int> stagesB;
  std::vector<IntMatrix> alphas;  // K0(A_{n_k}) -> K0(B_{m_k})
  std::vector<IntMatrix> betas;   // K0(B_{m_k}) -> K0(A_{n_{k+1}})

  for (int k = 1; k <= depth; ++k) {
    const int nk = stagesA.back();
    const StageK0 srcA = stage_k0(a, nk);
    FactorResult down;
    if (k == 1 && seed) {
      // Seed injection: accept the given matrix at the first B stage it fits.
      const IntMatrix& s = *seed;
      FactorResult found = NotFoundUpTo{search_bound};
      for (int m = 0; m <= std::min(search_bound, b.depth() - 1); ++m) {
        const StageK0 tgt = stage_k0(b, m);
        if (static_cast<int>(s.size()) != tgt.rank) continue;
        OrderedGroupMap om{s, srcA, tgt};
        const MapCheck c = check_map(om);
        if (c.positive && c.unit_preserving) {
          found = FactorFound{m, s};
          break;
        }
      }
      if (std::holds_alternative<NotFoundUpTo>(found)) {
        throw std::invalid_argument(
            "build_intertwining: seed map is not positive and unit preserving into any stage "
            "of B");
      }
      down = found;
    } else if (k == 1) {
      down = factor_through(srcA, column_of(srcA.order_unit), -1, b, 0, search_bound);
    } else {
      down = factor_through(srcA, betas.back(), stagesB.back(), b, stagesB.back() + 1,
                            search_bound);
    }
    if (std::holds_alternative<NotFoundUpTo>(down)) {
      return Refutation{k, 'B', search_bound,
                        "no positive unit-preserving factorization of stage " +
                            std::to_string(nk + 1) + " of A through any stage of B up to " +
                            std::to_string(search_bound + 1)};
    }
    const auto& [mk, alpha] = std::get<FactorFound>(down);
    stagesB.push_back(mk);
    alphas.push_back(alpha);

    if (k == depth) break;
    const StageK0 srcB = stage_k0(b, mk);
    FactorResult up = factor_through(srcB, alphas.back(), stagesA.back(), a,
                                     stagesA.back() + 1, search_bound);
    if (std::holds_alternative<NotFoundUpTo>(up)) {
      return Refutation{k, 'A', search_bound,
                        "no positive unit-preserving factorization of stage " +
                            std::to_string(mk + 1) + " of B through any stage of A up to " +
                            std::to_string(search_bound + 1)};
    }
    const auto& [nk1, beta] = std::get<FactorFound>(up);
    stagesA.push_back(nk1);
    betas.push_back(beta);
  }

  IntertwiningCertificate cert;
  cert.stagesA = stagesA;
  cert.stagesB = stagesB;
  for (int k = 0; k < depth; ++k) {
    cert.downs.push_back(MatrixUnitHom::canonical(shape_at(a, stagesA[static_cast<std::size_t>(k)]),
                                                  shape_at(b, stagesB[static_cast<std::size_t>(k)]),
                                                  as_mult(alphas[static_cast<std::size_t>(k)])));
  }
  for (int k = 0; k + 1 < depth; ++k) {
    cert.ups.push_back(
        MatrixUnitHom::canonical(shape_at(b, stagesB[static_cast<std::size_t>(k)]),
                                 shape_at(a, stagesA[static_cast<std::size_t>(k + 1)]),
                                 as_mult(betas[static_cast<std::size_t>(k)])));
  }
  for (int k = 0; k + 1 < depth; ++k) {
    const MatrixUnitHom conn_a = MatrixUnitHom::canonical(
        shape_at(a, stagesA[static_cast<std::size_t>(k)]),
        shape_at(a, stagesA[static_cast<std::size_t>(k + 1)]),
        as_mult(composite_multiplicity(a, stagesA[static_cast<std::size_t>(k)],
                                       stagesA[static_cast<std::size_t>(k + 1)])));
    cert.unitariesA.push_back(conjugating_unitary(
        conn_a, compose(cert.ups[static_cast<std::size_t>(k)],
                        cert.downs[static_cast<std::size_t>(k)])));
    const MatrixUnitHom conn_b = MatrixUnitHom::canonical(
        shape_at(b, stagesB[static_cast<std::size_t>(k)]),
        shape_at(b, stagesB[static_cast<std::size_t>(k + 1)]),
        as_mult(composite_multiplicity(b, stagesB[static_cast<std::size_t>(k)],
                                       stagesB[static_cast<std::size_t>(k + 1)])));
    cert.unitariesB.push_back(conjugating_unitary(
        conn_b, compose(cert.downs[static_cast<std::size_t>(k + 1)],
                        cert.ups[static_cast<std::size_t>(k)])));
  }
  return cert;
}

CertificateReport verify_certificate(const IntertwiningCertificate& cert, const Diagram& A,
                                     const Diagram& B) {
  CertificateReport report;
  auto fail = [&](const std::string& msg) { report.failures.push_back(msg); };

  const int depth = cert.depth();
  if (depth == 0) {
    report.ok = true;
    report.text = "empty certificate: vacuously valid\n";
    return report;
  }
  const int maxA = *std::max_element(cert.stagesA.begin(), cert.stagesA.end());
  const int maxB = *std::max_element(cert.stagesB.begin(), cert.stagesB.end());
  const Diagram a = materialize(A, maxA + 1);
  const Diagram b = materialize(B, maxB + 1);
  if (static_cast<int>(cert.stagesA.size()) != depth ||
      static_cast<int>(cert.stagesB.size()) != depth ||
      static_cast<int>(cert.ups.size()) != depth - 1 ||
      static_cast<int>(cert.unitariesA.size()) != depth - 1 ||
      static_cast<int>(cert.unitariesB.size()) != depth - 1) {
    throw std::invalid_argument("verify_certificate: inconsistent certificate dimensions");
  }
  for (int k = 1; k < depth; ++k) {
    if (cert.stagesA[static_cast<std::size_t>(k)] <= cert.stagesA[static_cast<std::size_t>(k - 1)] ||
        cert.stagesB[static_cast<std::size_t>(k)] <= cert.stagesB[static_cast<std::size_t>(k - 1)]) {
      fail("stage lists are not strictly increasing");
    }
  }
  for (int k = 0; k < depth; ++k) {
    const auto& f = cert.downs[static_cast<std::size_t>(k)];
    if (f.source() != shape_at(a, cert.stagesA[static_cast<std::size_t>(k)]) ||
        f.target() != shape_at(b, cert.stagesB[static_cast<std::size_t>(k)])) {
      throw std::invalid_argument("verify_certificate: down hom shape mismatch");
    }
    if (!verify_hom(f).all()) fail("down hom " + std::to_string(k + 1) + " fails an axiom");
  }
  for (int k = 0; k + 1 < depth; ++k) {
    const auto& g = cert.ups[static_cast<std::size_t>(k)];
    if (g.source() != shape_at(b, cert.stagesB[static_cast<std::size_t>(k)]) ||
        g.target() != shape_at(a, cert.stagesA[static_cast<std::size_t>(k + 1)])) {
      throw std::invalid_argument("verify_certificate: up hom shape mismatch");
    }
    if (!verify_hom(g).all()) fail("up hom " + std::to_string(k + 1) + " fails an axiom");
    if (!is_unitary(cert.unitariesA[static_cast<std::size_t>(k)]) ||
        !is_in_normalizer(cert.unitariesA[static_cast<std::size_t>(k)])) {
      fail("unitary U" + std::to_string(k + 2) + " is not a normalizer unitary");
    }
    if (!is_unitary(cert.unitariesB[static_cast<std::size_t>(k)]) ||
        !is_in_normalizer(cert.unitariesB[static_cast<std::size_t>(k)])) {
      fail("unitary V" + std::to_string(k + 2) + " is not a normalizer unitary");
    }
  }

  std::ostringstream os;
  for (int k = 0; k + 1 < depth; ++k) {
    const MatrixUnitHom conn_a = MatrixUnitHom::canonical(
        shape_at(a, cert.stagesA[static_cast<std::size_t>(k)]),
        shape_at(a, cert.stagesA[static_cast<std::size_t>(k + 1)]),
        as_mult(composite_multiplicity(a, cert.stagesA[static_cast<std::size_t>(k)],
                                       cert.stagesA[static_cast<std::size_t>(k + 1)])));
    const MatrixUnitHom conn_b = MatrixUnitHom::canonical(
        shape_at(b, cert.stagesB[static_cast<std::size_t>(k)]),
        shape_at(b, cert.stagesB[static_cast<std::size_t>(k + 1)]),
        as_mult(composite_multiplicity(b, cert.stagesB[static_cast<std::size_t>(k)],
                                       cert.stagesB[static_cast<std::size_t>(k + 1)])));
    bool tri_a = true;
    for (const auto& r : probe_units(conn_a.source())) {
      const BlockMatrix lhs =
          cert.ups[static_cast<std::size_t>(k)].apply(
              cert.downs[static_cast<std::size_t>(k)].image_of_unit(r));
      const BlockMatrix rhs = ad(cert.unitariesA[static_cast<std::size_t>(k)],
                                 conn_a.image_of_unit(r));
      if (lhs != rhs) {
        tri_a = false;
        break;
      }
    }
    bool tri_b = true;
    for (const auto& r : probe_units(conn_b.source())) {
      const BlockMatrix lhs =
          cert.downs[static_cast<std::size_t>(k + 1)].apply(
              cert.ups[static_cast<std::size_t>(k)].image_of_unit(r));
      const BlockMatrix rhs = ad(cert.unitariesB[static_cast<std::size_t>(k)],
                                 conn_b.image_of_unit(r));
      if (lhs != rhs) {
        tri_b = false;
        break;
      }
    }
    os << "triangle " << k + 1 << " (A side): " << (tri_a ? "pass" : "FAIL") << "\n";
    os << "triangle " << k + 1 << " (B side): " << (tri_b ? "pass" : "FAIL") << "\n";
    if (!tri_a) fail("A-side triangle " + std::to_string(k + 1) + " does not commute");
    if (!tri_b) fail("B-side triangle " + std::to_string(k + 1) + " does not commute");
  }

  report.ok = report.failures.empty();
  os << (report.ok ? "certificate valid\n" : "certificate INVALID\n");
  for (const auto& f : report.failures) os << "  " << f << "\n";
  report.text = os.str();
  return report;
}

Decision decide_af_pair_isomorphic(const Diagram& A, const Diagram& B, int depth,
                                   int search_bound) {
  Decision d;
  IntertwiningResult res = build_intertwining(A, B, std::nullopt, depth, search_bound);
  std::ostringstream os;
  if (auto* cert = std::get_if<IntertwiningCertificate>(&res)) {
    const CertificateReport rep = verify_certificate(*cert, A, B);
    d.isomorphic_witnessed = rep.ok;
    d.certificate = std::move(*cert);
    os << "isomorphism certificate of depth " << depth << " found\n" << rep.text;
  } else {
    const Refutation& ref = std::get<Refutation>(res);
    d.refutation = ref;
    os << "no certificate up to search bound " << search_bound + 1 << ": " << ref.detail << "\n";
    os << "(bounded refutation; not a proof of non-isomorphism)\n";
    auto single_point = [](const Diagram& x) {
      for (const auto& level : x.levels) {
        if (level.size() != 1 || level[0].base != Base::Point) return false;
      }
      return true;
    };
    if (single_point(A) && single_point(B)) {
      d.supernaturalA = supernatural_invariant(A, search_bound + 1);
      d.supernaturalB = supernatural_invariant(B, search_bound + 1);
      os << "supernatural invariant of A: " << d.supernaturalA->str() << "\n";
      os << "supernatural invariant of B: " << d.supernaturalB->str() << "\n";
      os << "invariants " << (*d.supernaturalA == *d.supernaturalB ? "agree" : "differ") << "\n";
    }
  }
  d.text = os.str();
  return d;
}

std::string serialize_certificate(const IntertwiningCertificate& cert) {
  std::ostringstream os;
  os << "intertwining certificate\n";
  os << "depth: " << cert.depth() << "\n";
  os << "stagesA:";
  for (int n : cert.stagesA) os << " " << n + 1;
  os << "\nstagesB:";
  for (int m : cert.stagesB) os << " " << m + 1;
  os << "\n";
  for (int k = 0; k < cert.depth(); ++k) {
    os << "down[" << k + 1 << "]\n" << serialize_hom(cert.downs[static_cast<std::size_t>(k)]);
  }
  for (int k = 0; k + 1 < cert.depth(); ++k) {
    os << "up[" << k + 1 << "]\n" << serialize_hom(cert.ups[static_cast<std::size_t>(k)]);
  }
  auto dump_unitary = [&os](const char* name, int index, const BlockMatrix& u) {
    os << name << "[" << index << "] permutation (col -> row):\n";
    for (int j = 0; j < u.shape().summands(); ++j) {
      os << "  summand " << j + 1 << ":";
      std::map<long long, long long> col_to_row;
      for (const auto& [rc, v] : u.block(j)) {
        (void)v;
        col_to_row[rc.second] = rc.first;
      }
      for (const auto& [c, r] : col_to_row) {
        (void)c;
        os << " " << r;
      }
      os << "\n";
    }
  };
  for (int k = 0; k + 1 < cert.depth(); ++k) {
    dump_unitary("U", k + 2, cert.unitariesA[static_cast<std::size_t>(k)]);
    dump_unitary("V", k + 2, cert.unitariesB[static_cast<std::size_t>(k)]);
  }
  return os.str();
}

}  // namespace cdiag
