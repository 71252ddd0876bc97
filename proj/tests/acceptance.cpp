// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Optional argument: path to the tbi executable, used to
// check byte-identical output across separate processes.

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "support/generators.hpp"
#include "tbi/catalog.hpp"
#include "tbi/cohomology.hpp"
#include "tbi/curve.hpp"
#include "tbi/errors.hpp"
#include "tbi/exterior.hpp"
#include "tbi/report.hpp"
#include "tbi/riemann_variety.hpp"

using namespace tbi;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (pass) detail << "first failure: " << what << "; ";
      pass = false;
    }
  }
};

using Criterion = std::function<void(Outcome&)>;

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---------------------------------------------------------------------------

void iwasawa_headline(Outcome& out) {
  const auto t0 = std::chrono::steady_clock::now();
  const CohomologyReport R = compute_report(catalog("iwasawa"));
  const double dt = seconds_since(t0);
  out.require(R.parallelizable, "parallelizable");
  out.require(R.h1_O == 2, "h1(O) = 2");
  out.require(R.h_theta.at(1) == 6, "dim H1(Theta) = 6");
  out.require(dt < 1.0, "runtime < 1 s");
  out.detail << "parallelizable=" << R.parallelizable << " h1(O)=" << R.h1_O
             << " h1(Theta)=" << R.h_theta.at(1) << " runtime=" << dt << "s";
}

void iwasawa_hodge(Outcome& out) {
  const CohomologyReport R = compute_report(catalog("iwasawa"));
  const std::vector<int> h = R.table.h();
  out.require(h == std::vector<int>({1, 2, 2, 1}), "h_O = [1,2,2,1]");
  int euler = 0;
  for (int p = 0; p <= 3; ++p) {
    out.require(h[p] == h[3 - p], "Serre symmetry");
    euler += (p % 2 ? -1 : 1) * h[p];
  }
  out.require(euler == 0, "Euler characteristic 0");
  out.require(h[1] == R.h1_O, "spectral h1 equals direct h1");
  out.detail << "h_O=[" << h[0] << "," << h[1] << "," << h[2] << "," << h[3]
             << "] direct h1=" << R.h1_O;
}

void product_bundles(Outcome& out) {
  int cases = 0;
  for (int m = 1; m <= 4; ++m)
    for (int d = 1; d <= 4; ++d) {
      const BundleDatum D{ExtensionForm(2 * m, 2 * d), gaussian_structure(m), gaussian_structure(d),
                          std::nullopt};
      const CohomologyReport R = compute_report(D);
      const int n = m + d;
      out.require(R.h0_omega1 == n, "h0(Omega1) = m + d");
      for (int p = 0; p <= n; ++p) {
        out.require(R.h_O[p] == binomial(n, p), "h^p(O) = C(m+d, p)");
        out.require(R.h_theta[p] == n * binomial(n, p), "h^p(Theta) = (m+d) C(m+d, p)");
      }
      ++cases;
    }
  out.detail << cases << " (m, d) pairs with m, d <= 4";
}

void kuranishi(Outcome& out) {
  const auto a = kuranishi_dim(2, 1), b = kuranishi_dim(2, 2), c = kuranishi_dim(3, 1);
  out.require(a == 6 && b == 11 && c == 10, "3g - 3 + dg + d^2");
  out.detail << "(2,1)=" << a << " (2,2)=" << b << " (3,1)=" << c;
}

// ---------------------------------------------------------------------------

struct Instance {
  BundleDatum D;
  std::string origin;
};

// 500 points of parameter varieties with m, d <= 4: Gaussian-integer forms
// (optionally in a twisted lattice basis) and sampled points of random forms.
std::vector<Instance> property_instances(std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  std::vector<Instance> out;
  std::uniform_int_distribution<int> dim(1, 4), pct(0, 99);
  while (static_cast<int>(out.size()) < count) {
    int m = dim(rng);
    const int d = dim(rng);
    Instance inst;
    if (pct(rng) < 30) {
      if (m * (m - 1) / 2 > d) m = 2;
      const ExtensionForm A = testing::random_form(rng, m, d);
      const SampleOutcome s = sample_point(A, rng(), 100);
      if (!s.success) continue;
      inst = {{A, s.V, s.U, std::nullopt}, "sampled"};
    } else {
      const auto holo = pct(rng) < 25 ? testing::HoloKind::Zero : testing::HoloKind::Random;
      const auto herm = pct(rng) < 25 ? testing::HermKind::Zero : testing::HermKind::Random;
      inst = {testing::gaussian_instance(rng, m, d, holo, herm), "gaussian"};
      if (pct(rng) < 50) {
        inst.D = testing::unimodular_twist(rng, inst.D);
        inst.origin = "gaussian-twisted";
      }
    }
    if (pct(rng) < 50) inst.D.phi = MatrixXcd::Random(d, 2 * m);
    out.push_back(std::move(inst));
  }
  return out;
}

void property_suite(Outcome& out) {
  const auto instances = property_instances(20261019, 500);
  std::mt19937_64 rng(99);
  double worst_recon = 0.0, worst_z = 0.0, worst_lattice = 0.0, worst_d2 = 0.0;
  int verdicts = 0, non_members = 0, skipped_charts = 0, invalid = 0;
  std::array<bool, 6> ok{true, true, true, true, true, true};

  for (const Instance& inst : instances) {
    const BundleDatum& D = inst.D;
    const int m = D.A.base_dim(), d = D.A.fibre_dim();
    try {
      validate_bundle(D);
    } catch (const Error&) {
      ++invalid;
      continue;
    }
    const DecomposedForm F = decompose(D.A, D.V, D.U);

    // (a) reconstruction, relative to the largest entry of A
    double amax = 1.0;
    for (int k = 0; k < 2 * d; ++k)
      for (int i = 0; i < 2 * m; ++i)
        for (int j = 0; j < 2 * m; ++j) amax = std::max(amax, std::abs(double(D.A.at(k, i, j))));
    const double recon = reconstruction_error(F, D.A, D.V, D.U) / amax;
    worst_recon = std::max(worst_recon, recon);
    ok[0] = ok[0] && recon < 1e-8;

    // (b) commutators, exactly
    for (int s = 0; s < 5; ++s) {
      const GroupElement a{testing::random_vector(rng, 2 * d), testing::random_vector(rng, 2 * m)};
      const GroupElement b{testing::random_vector(rng, 2 * d), testing::random_vector(rng, 2 * m)};
      const GroupElement c = commutator(a, b, D.A);
      ok[1] = ok[1] && c.lambda == D.A.apply(a.gamma, b.gamma) &&
              c.gamma == IntVector(static_cast<std::size_t>(2 * m), 0);
    }

    // (c) cocycle defects: independent of z and lattice-valued
    for (int s = 0; s < 4; ++s) {
      const IntVector g1 = testing::random_vector(rng, 2 * m, 3);
      const IntVector g2 = testing::random_vector(rng, 2 * m, 3);
      const VectorXcd ref = cocycle_defect(D, g1, g2, VectorXcd::Zero(m));
      const LatticeProjection lp = nearest_lattice_vector(D.U, ref);
      worst_lattice = std::max(worst_lattice, lp.distance);
      for (int t = 0; t < 3; ++t) {
        const VectorXcd v = cocycle_defect(D, g1, g2, testing::random_complex(rng, m));
        worst_z = std::max(worst_z, (v - ref).cwiseAbs().maxCoeff() /
                                        (1.0 + ref.cwiseAbs().maxCoeff()));
      }
    }
    ok[2] = ok[2] && worst_z < 1e-8 && worst_lattice < 1e-8;

    // (d) d2 o d2 = 0
    const CohomologyReport R = compute_report(F);
    worst_d2 = std::max(worst_d2, R.table.d2_squared_residual);
    ok[3] = ok[3] && R.table.d2_squared_residual < 1e-8;

    // (e) Riemann check and local equations agree, on the point itself and
    // with the fibre structure replaced by a random one. Points whose U has
    // no standard chart are compared in a twisted lattice basis.
    BundleDatum E = D;
    for (int tries = 0; tries < 20; ++tries) {
      try {
        chart_of(E.U);
        break;
      } catch (const Error&) {
        E = testing::unimodular_twist(rng, D);
      }
    }
    for (const ComplexStructure& U : {E.U, random_structure(d, rng())}) {
      MatrixXcd chart;
      try {
        chart = chart_of(U);
      } catch (const Error&) {
        ++skipped_charts;
        continue;
      }
      const bool r = riemann_check(E.A, E.V, U).member;
      const bool l = local_equations(E.A, E.V, chart).member;
      ok[4] = ok[4] && r == l;
      ++verdicts;
      non_members += !r;
    }

    // (f) all holomorphic 1-forms survive iff B'' vanishes
    ok[5] = ok[5] && ((R.h0_omega1 == m + d) == R.parallelizable);
  }

  out.require(invalid == 0, "all generated instances are valid");
  const char* labels[] = {"(a) reconstruction", "(b) commutators", "(c) cocycle defect",
                          "(d) d2^2", "(e) Riemann/local agreement", "(f) forms/parallelizable"};
  for (int i = 0; i < 6; ++i) out.require(ok[i], labels[i]);
  out.require(non_members > 50, "enough non-member cases for (e)");
  out.require(skipped_charts == 0, "every comparison in (e) has a chart");
  out.detail << instances.size() << " instances; recon " << worst_recon << ", z-var " << worst_z
             << ", lattice " << worst_lattice << ", d2^2 " << worst_d2 << ", verdicts " << verdicts
             << " (" << non_members << " false, " << skipped_charts << " without chart)";
}

// ---------------------------------------------------------------------------

void remark_cases(Outcome& out) {
  std::mt19937_64 rng(615);
  std::vector<BundleDatum> points;
  std::uniform_int_distribution<int> mdim(2, 4);
  // Parallelizable points: complex-bilinear Gaussian forms.
  while (points.size() < 25) {
    BundleDatum D = testing::gaussian_instance(rng, mdim(rng), 1, testing::HoloKind::Random,
                                               testing::HermKind::Zero);
    if (points.size() % 2) D = testing::unimodular_twist(rng, D);
    points.push_back(std::move(D));
  }
  // Sampled points of random and of Iwasawa-type forms, and Gaussian forms
  // with both components.
  const ExtensionForm iw = catalog("iwasawa").A;
  while (points.size() < 50) {
    const int kind = static_cast<int>(points.size() % 3);
    if (kind == 2) {
      points.push_back(testing::gaussian_instance(rng, mdim(rng), 1, testing::HoloKind::Random,
                                                  testing::HermKind::Random));
      continue;
    }
    const ExtensionForm A = kind == 0 ? testing::random_form(rng, 2, 1) : iw;
    const SampleOutcome s = sample_point(A, rng(), 100);
    if (s.success) points.push_back({A, s.V, s.U, std::nullopt});
  }

  int case1 = 0, case2 = 0, other = 0, worst_gap = -1000;
  for (const BundleDatum& D : points) {
    const CohomologyReport R = compute_report(D);
    const int m = R.m;
    if (!R.ks_case) {
      out.require(false, "d = 1 has a case label");
      continue;
    }
    switch (*R.ks_case) {
      case KsCase::Case1:
        ++case1;
        out.require(R.h_theta[1] == (m + 1) * R.h1_O, "Case 1: h1(Theta) = (m+1) h1(O)");
        break;
      case KsCase::Case2:
        ++case2;
        worst_gap = std::max(worst_gap, R.h_theta[1] - m * (m + 1));
        out.require(R.h_theta[1] <= m * (m + 1), "Case 2: h1(Theta) <= m(m+1)");
        break;
      default:
        ++other;
    }
  }
  out.require(case1 >= 20 && case2 >= 20, "both cases represented");
  out.detail << points.size() << " points: " << case1 << " Case 1, " << case2 << " Case 2, "
             << other << " other; max h1(Theta) - m(m+1) over Case 2 = " << worst_gap;
}

void sampler(Outcome& out) {
  const InputDocument base = make_document(catalog("iwasawa"));
  int successes = 0, revalidated = 0, attempts = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const SampleOutcome s = sample_point(base.A, seed, 100);
    attempts += s.attempts;
    if (!s.success) continue;
    ++successes;
    InputDocument doc = base;
    doc.V = s.V;
    doc.U = s.U;
    // Through the serialised form, as the CLI would see it.
    const InputDocument back = parse_document(dump_json(to_json(doc)));
    revalidated += validate_document(back, resolve_tolerance(std::nullopt, &back)).exit_code == 0;
  }
  out.require(successes >= 95, ">= 95 of 100 seeds succeed");
  out.require(revalidated == successes, "every success validates");
  out.detail << successes << "/100 seeds succeeded, " << revalidated << " re-validated, "
             << attempts << " attempts in total";
}

std::string run_capture(const std::string& cmd, int& status) {
  std::string out;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) {
    status = -1;
    return out;
  }
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
  status = pclose(p);
  return out;
}

void determinism(Outcome& out, const std::string& tbi) {
  int checked = 0;
  for (const auto& name : catalog_names()) {
    const InputDocument doc = make_document(catalog(name));
    const std::string a = dump_json(invariants_report(doc, kDefaultTolerance));
    const std::string b = dump_json(invariants_report(doc, kDefaultTolerance));
    out.require(a == b, "in-process reports identical for " + name);
    ++checked;
    if (tbi.empty()) continue;
    int st = 0;
    const std::string file = "acceptance_" + name + ".json";
    run_capture(tbi + " catalog " + name + " > " + file, st);
    out.require(st == 0, "tbi catalog " + name);
    const std::string c = run_capture(tbi + " invariants " + file, st);
    const std::string e = run_capture(tbi + " invariants " + file, st);
    out.require(st == 0 && c == e && !c.empty(), "CLI runs identical for " + name);
    out.require(c == a, "CLI output equals library output for " + name);
    std::remove(file.c_str());
  }
  out.detail << checked << " catalog inputs"
             << (tbi.empty() ? " (in-process only)" : ", in-process and across CLI runs");
}

}  // namespace

int main(int argc, char** argv) {
  const std::string tbi = argc > 1 ? argv[1] : "";
  const std::vector<std::pair<std::string, Criterion>> criteria{
      {"1 Iwasawa: parallelizable, h1(O)=2, h1(Theta)=6", iwasawa_headline},
      {"2 Iwasawa: h_O=[1,2,2,1], Serre symmetry, Euler 0", iwasawa_hodge},
      {"3 Product bundles m,d<=4", product_bundles},
      {"4 Kuranishi dimension formula", kuranishi},
      {"5 Property suite (500 instances)", property_suite},
      {"6 Case 1 / Case 2 on 50 points with d=1", remark_cases},
      {"7 Sampler on the Iwasawa form", sampler},
      {"8 Deterministic invariant reports", [&](Outcome& o) { determinism(o, tbi); }},
  };
  int failures = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      run(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    std::cout << (o.pass ? "PASS" : "FAIL") << "  [" << name << "]  " << o.detail.str() << "  ("
              << seconds_since(t0) << " s)" << std::endl;
    failures += !o.pass;
  }
  std::cout << (failures ? "acceptance: FAILED " : "acceptance: all criteria passed ")
            << (failures ? std::to_string(failures) + " criteria" : "") << std::endl;
  return failures ? 1 : 0;
}
