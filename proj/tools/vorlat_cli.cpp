#include <CLI11.hpp>
#include <cstdio>
#include <numbers>
#include <string>
#include <vector>

#include "vorlat/errors.hpp"
#include "vorlat/json_io.hpp"
#include "vorlat/kernels.hpp"
#include "vorlat/lm_family.hpp"
#include "vorlat/parallel.hpp"
#include "vorlat/planar.hpp"
#include "vorlat/relevant.hpp"

namespace {

using vorlat::json;

void emit_json(const std::string& path, const json& j) {
  if (path == "-")
    std::printf("%s\n", j.dump(2).c_str());
  else
    vorlat::write_json_file(path, j);
}

std::string coeffs_str(const Eigen::VectorXi& z) {
  std::string s = "(";
  for (Eigen::Index i = 0; i < z.size(); ++i) s += (i ? ", " : "") + std::to_string(z[i]);
  return s + ")";
}

std::string coords_str(const Eigen::VectorXd& x) {
  std::string s = "(";
  char buf[64];
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%s%.12g", i ? ", " : "", x[i]);
    s += buf;
  }
  return s + ")";
}

vorlat::Basis load_basis(const std::string& path) {
  return vorlat::basis_from_json(vorlat::read_json_file(path));
}

int run_relvecs(const std::string& basis_path, const std::string& norm_str,
                const std::string& json_path, std::uint64_t seed, std::int64_t budget) {
  auto basis = load_basis(basis_path);
  auto norm = vorlat::NormSpec::parse(norm_str);
  vorlat::SearchParams params;
  params.seed = seed;
  auto report = vorlat::enumerate_relevant(basis, norm, params, budget);

  std::printf("norm %s  dim %d  lambda1 %.12g  mu_upper %.12g  candidate_radius %.12g\n",
              report.norm.str().c_str(), basis.dim(), report.lambda1, report.mu_upper,
              report.candidate_radius);
  std::printf("relevant %d  weak_only %d  not_relevant %d  undecided %d\n",
              report.counts.relevant, report.counts.weak_only, report.counts.not_relevant,
              report.counts.undecided);
  for (const auto& e : report.results)
    std::printf("%-12s %s  coords %s  margin %.3g\n", vorlat::status_name(e.status),
                coeffs_str(e.v.coeffs).c_str(), coords_str(e.v.coords).c_str(), e.margin);
  if (!json_path.empty()) emit_json(json_path, vorlat::to_json(report));
  return 0;
}

int run_lm_verify(long m, int window, const std::string& numeric, const std::string& json_path) {
  auto mode = vorlat::numeric_mode_from_name(numeric);
  auto report = vorlat::verify_theorem_main(m, window, mode);
  std::printf("m %ld  M %.12g  mode %s  window %d  expected_count %ld\n", report.m, report.M,
              vorlat::numeric_mode_name(report.mode), report.window, report.expected_count);
  for (const auto& rec : report.records) {
    std::printf("k %ld %-8s %s\n", rec.k, rec.kind.c_str(), rec.pass ? "pass" : "FAIL");
    if (!rec.pass)
      for (const auto& c : rec.checks)
        if (!c.pass)
          std::printf("  %s: lhs %.17g rhs %.17g margin %.3g threshold %.3g\n", c.name.c_str(),
                      c.lhs, c.rhs, c.margin, c.threshold);
  }
  std::string ks;
  for (long k : report.certified_k) ks += (ks.empty() ? "" : ", ") + std::to_string(k);
  std::printf("certified_k [%s]  %zu/%ld  %s\n", ks.c_str(), report.certified_k.size(),
              report.expected_count, report.pass ? "PASS" : "FAIL");
  if (!json_path.empty()) emit_json(json_path, vorlat::to_json(report));
  return report.pass ? 0 : 1;
}

int run_cell2d(const std::string& basis_path, const std::string& norm_str, int angles,
               bool check, const std::string& json_path, const std::string& svg_path) {
  auto basis = load_basis(basis_path);
  auto norm = vorlat::NormSpec::parse(norm_str);

  vorlat::Cell2D cell;
  std::vector<vorlat::Facet2D> facets;
  if (check) {
    auto res = vorlat::check_4or6(basis, norm, angles);
    cell = std::move(res.cell);
    facets = std::move(res.facets);
    std::printf("relevant %ld  facets %ld  4-or-6 law holds\n", res.relevant_count,
                res.facet_count);
  } else {
    cell = vorlat::trace_cell2d(basis, norm, angles);
    facets = vorlat::extract_facets(cell);
  }

  std::printf("norm %s  mu_upper %.12g  angles %zu  facets %zu\n", cell.norm.str().c_str(),
              cell.mu_upper, cell.samples.size(), facets.size());
  const double deg = 360.0 / static_cast<double>(cell.samples.size());
  for (const auto& f : facets) {
    const auto& g = cell.generators[static_cast<std::size_t>(f.generator)];
    std::printf("facet %s  arc [%.1f, %.1f] deg  (%d samples)\n", coeffs_str(g.coeffs).c_str(),
                f.first * deg, (f.first + f.len - 1) * deg, f.len);
  }
  if (!json_path.empty()) emit_json(json_path, vorlat::to_json(cell, facets));
  if (!svg_path.empty())
    vorlat::write_text_file(svg_path, vorlat::render_svg(cell, facets));
  return 0;
}

int run_l1_family(long m, const std::string& json_path, const std::string& svg_path) {
  auto report = vorlat::l1_family_weak_relevant(m);
  std::printf("m %ld  weakly_relevant %zu  expected %ld  hole (0, %.12g)\n", report.m,
              report.vectors.size(), report.expected_count, report.hole.y());
  for (const auto& v : report.vectors)
    std::printf("coeffs (%d, %d)  coords (%d, %d)\n", v.coeffs[0], v.coeffs[1], v.coords[0],
                v.coords[1]);
  if (!json_path.empty()) emit_json(json_path, vorlat::to_json(report));
  if (!svg_path.empty()) {
    auto basis = vorlat::l1_family_basis(m);
    auto cell = vorlat::trace_cell2d(basis, vorlat::NormSpec::parse("l1"), 720);
    auto facets = vorlat::extract_facets(cell);
    vorlat::RenderOptions opt;
    opt.shade_ties = true;
    for (const auto& v : report.vectors) opt.highlight.push_back(v.coeffs);
    vorlat::write_text_file(svg_path, vorlat::render_svg(cell, facets, opt));
  }
  return 0;
}

int run_cvp(const std::string& basis_path, const std::string& norm_str,
            const std::vector<double>& target, const std::string& method,
            const std::string& json_path, std::int64_t budget) {
  auto basis = load_basis(basis_path);
  auto norm = vorlat::NormSpec::parse(norm_str);
  if (static_cast<int>(target.size()) != basis.dim())
    throw vorlat::DimensionMismatch("target has " + std::to_string(target.size()) +
                                    " coordinates, basis dimension is " +
                                    std::to_string(basis.dim()));
  Eigen::VectorXd t(basis.dim());
  for (int i = 0; i < basis.dim(); ++i) t[i] = target[static_cast<std::size_t>(i)];

  const bool use_walk = method == "walk" || (method == "auto" && !norm.is_inf && norm.p == 2.0);
  auto res = use_walk ? vorlat::cvp_walk_euclidean(basis, norm, t)
                      : vorlat::cvp_bruteforce(basis, norm, t, budget);
  std::printf("method %s  target %s\n", use_walk ? "walk" : "brute", coords_str(t).c_str());
  std::printf("closest %s  coords %s  distance %.12g\n", coeffs_str(res.closest.coeffs).c_str(),
              coords_str(res.closest.coords).c_str(), res.distance);
  if (!json_path.empty())
    emit_json(json_path, json{{"method", use_walk ? "walk" : "brute"},
                              {"target", target},
                              {"closest", vorlat::to_json(res.closest)},
                              {"distance", res.distance}});
  return 0;
}

int run_bound(const std::string& basis_path, const std::string& norm_str,
              const std::string& json_path, std::int64_t budget) {
  auto basis = load_basis(basis_path);
  auto norm = vorlat::NormSpec::parse(norm_str);
  auto params = vorlat::compute_params(basis, norm, budget);
  const double bound = std::pow(1.0 + 4.0 * params.mu_upper / params.lambda1, basis.dim());
  std::printf("norm %s  dim %d  simd %s\n", norm.str().c_str(), basis.dim(),
              vorlat::kernels::level_name(vorlat::kernels::active_level()));
  std::printf("lambda1 %.12g  witness %s\n", params.lambda1,
              coeffs_str(params.lambda1_witness.coeffs).c_str());
  std::printf("mu_upper %.12g\n", params.mu_upper);
  std::printf("packing_bound %.12g  (max weak+relevant count)\n", bound);
  if (!json_path.empty())
    emit_json(json_path, json{{"norm", norm.str()},
                              {"dim", basis.dim()},
                              {"lambda1", params.lambda1},
                              {"lambda1_witness", vorlat::to_json(params.lambda1_witness)},
                              {"mu_upper", params.mu_upper},
                              {"packing_bound", bound}});
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Voronoi-relevant vectors of lattices under lp norms"};
  app.require_subcommand(1);

  int threads = 0;
  std::string simd;
  app.add_option("--threads", threads, "worker threads (0 = hardware)");
  app.add_option("--simd", simd, "force kernel level: scalar, avx2, neon")
      ->check(CLI::IsMember({"scalar", "avx2", "neon"}));

  std::string basis_path, norm_str = "l2", json_path, svg_path, numeric = "binary64";
  std::string method = "auto";
  std::vector<double> target;
  long m = 0;
  int window = 6, angles = 720;
  std::uint64_t seed = 0;
  std::int64_t budget = 10'000'000;
  bool check46 = false;

  auto* relvecs = app.add_subcommand("relvecs", "classify relevant / weakly relevant vectors");
  relvecs->add_option("--basis", basis_path, "basis json file")->required();
  relvecs->add_option("--norm", norm_str, "lp norm (l1, l1.5, l2, l3, linf, ...)");
  relvecs->add_option("--json", json_path, "write report json (- for stdout)");
  relvecs->add_option("--seed", seed, "seed recorded in the report");
  relvecs->add_option("--budget", budget, "enumeration node budget");

  auto* lmv = app.add_subcommand("lm-verify",
                                 "verify the 3D l3 lattice family: floor(sqrt(m)) - 1 "
                                 "relevant-vector certificates");
  lmv->add_option("--m", m, "family parameter (>= 4)")->required();
  lmv->add_option("--window", window, "in-plane sweep window");
  lmv->add_option("--numeric", numeric, "binary64 or extended (m > 25 forces extended)")
      ->check(CLI::IsMember({"binary64", "extended"}));
  lmv->add_option("--json", json_path, "write report json (- for stdout)");

  auto* cell = app.add_subcommand("cell2d", "trace the planar Voronoi cell of the origin");
  cell->add_option("--basis", basis_path, "basis json file (2x2)")->required();
  cell->add_option("--norm", norm_str, "lp norm");
  cell->add_option("--angles", angles, "boundary rays")->check(CLI::Range(8, 100000));
  cell->add_flag("--check-4or6", check46,
                 "cross-check facet count against relevant vectors (strictly convex norms)");
  cell->add_option("--json", json_path, "write cell json (- for stdout)");
  cell->add_option("--svg", svg_path, "render the cell to an svg file");

  auto* fam = app.add_subcommand("l1-family",
                                 "weakly relevant vectors of the (1,1),(0,m) lattice under l1");
  fam->add_option("--m", m, "family parameter (>= 2)")->required();
  fam->add_option("--json", json_path, "write report json (- for stdout)");
  fam->add_option("--svg", svg_path, "render the l1 cell with tie shading");

  auto* cvp = app.add_subcommand("cvp", "closest lattice point to a target");
  cvp->add_option("--basis", basis_path, "basis json file")->required();
  cvp->add_option("--norm", norm_str, "lp norm");
  cvp->add_option("--target", target, "target coordinates, comma separated")
      ->required()
      ->delimiter(',');
  cvp->add_option("--method", method, "walk (l2 greedy), brute, or auto")
      ->check(CLI::IsMember({"auto", "walk", "brute"}));
  cvp->add_option("--json", json_path, "write result json (- for stdout)");
  cvp->add_option("--budget", budget, "enumeration node budget");

  auto* bound = app.add_subcommand("bound", "first minimum, covering bound, packing bound");
  bound->add_option("--basis", basis_path, "basis json file")->required();
  bound->add_option("--norm", norm_str, "lp norm");
  bound->add_option("--json", json_path, "write result json (- for stdout)");
  bound->add_option("--budget", budget, "enumeration node budget");

  try {
    app.parse(argc, argv);
    if (threads > 0) vorlat::set_default_threads(threads);
    if (!simd.empty()) {
      using vorlat::kernels::Level;
      vorlat::kernels::set_level(simd == "avx2"   ? Level::avx2
                                 : simd == "neon" ? Level::neon
                                                  : Level::scalar);
    }

    if (relvecs->parsed()) return run_relvecs(basis_path, norm_str, json_path, seed, budget);
    if (lmv->parsed()) return run_lm_verify(m, window, numeric, json_path);
    if (cell->parsed())
      return run_cell2d(basis_path, norm_str, angles, check46, json_path, svg_path);
    if (fam->parsed()) return run_l1_family(m, json_path, svg_path);
    if (cvp->parsed()) return run_cvp(basis_path, norm_str, target, method, json_path, budget);
    if (bound->parsed()) return run_bound(basis_path, norm_str, json_path, budget);
    return 2;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::fflush(stdout);
    std::fprintf(stderr, "%s\n",
                 json{{"error", "InputError"}, {"message", e.what()}}.dump().c_str());
    return 2;
  } catch (const vorlat::BudgetExceeded& e) {
    std::fflush(stdout);
    std::fprintf(stderr, "%s\n",
                 json{{"error", "BudgetExceeded"}, {"message", e.what()}}.dump().c_str());
    return 3;
  } catch (const vorlat::ClaimViolated& e) {
    std::fflush(stdout);
    std::fprintf(stderr, "%s\n",
                 json{{"error", "ClaimViolated"}, {"message", e.what()}}.dump().c_str());
    return 1;
  } catch (const std::exception& e) {
    std::fflush(stdout);
    std::fprintf(stderr, "%s\n",
                 json{{"error", "InputError"}, {"message", e.what()}}.dump().c_str());
    return 2;
  }
}
