// Command-line front end: generate Schottky deformations, export spectra and
// convergence reports, compare and reconstruct groups.  Every command is a
// deterministic function of its inputs and the --seed flag.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "margulis/io.hpp"
#include "margulis/sample.hpp"

namespace {

using namespace margulis;

void write_out(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(path);
  if (!out) throw MalformedInput("cannot write output file: " + path);
  out << content;
}

Vec3 parse_triple(const std::string& text) {
  Vec3 v;
  char c1 = 0, c2 = 0;
  std::istringstream ss(text);
  if (!(ss >> v(0) >> c1 >> v(1) >> c2 >> v(2)) || c1 != ',' || c2 != ',')
    throw MalformedInput("expected a comma-separated triple: " + text);
  return v;
}

int cmd_generate(int rank, std::uint64_t seed, Real t_min, Real t_max,
                 Real theta_jitter, Real cocycle_scale, Real margin,
                 const std::string& description, const std::string& out) {
  SchottkyParams params;
  params.rank = rank;
  params.t_min = t_min;
  params.t_max = t_max;
  params.theta_jitter = theta_jitter;
  params.cocycle_scale = cocycle_scale;
  params.margin = margin;
  Rng rng(seed);
  const Presentation p = random_schottky_deformation(params, rng);

  const auto intervals =
      find_schottky_intervals(linear_parts(p), margin, default_config());
  const RadiancePoint rad = radiant_least_squares(p.gens);
  std::cerr << "schottky_min_gap: "
            << format_real(intervals ? intervals->min_gap : Real(0)) << "\n"
            << "radiance_residual: " << format_real(rad.residual) << "\n";
  if (rad.residual < default_config().radiant_tol)
    std::cerr << "warning: group is radiant (fixed point "
              << format_real(rad.point(0)) << ", " << format_real(rad.point(1))
              << ", " << format_real(rad.point(2)) << ")\n";

  GroupFile gf;
  gf.group = p;
  gf.metadata.seed = seed;
  gf.metadata.description = description;
  if (out.empty()) throw MalformedInput("generate requires --out");
  save_group_file(out, gf);
  return 0;
}

int cmd_spectrum(const std::string& path, int max_len, const std::string& out,
                 const std::string& format) {
  const GroupFile gf = load_group_file(path);
  const Spectrum s = marked_spectrum(gf.group, max_len);
  std::ostringstream os;
  if (format == "json")
    write_spectrum_json(os, s);
  else
    write_spectrum_table(os, s);
  write_out(out, os.str());
  return 0;
}

int cmd_reconstruct(const std::string& path_a, const std::string& path_b,
                    int max_len, Real tol, const std::string& out,
                    const std::string& format) {
  const GroupFile a = load_group_file(path_a);
  const GroupFile b = load_group_file(path_b);
  ConjugacyCertificate cert;
  try {
    cert = strong_reconstruct(a.group, b.group, max_len, tol);
  } catch (const RadiantInput& e) {
    std::cerr << "precondition: " << e.what() << "\n";
    return 2;
  } catch (const ElementaryGroup& e) {
    std::cerr << "precondition: " << e.what() << "\n";
    return 2;
  } catch (const NonElementaryViolated& e) {
    std::cerr << "precondition: " << e.what() << "\n";
    return 2;
  } catch (const HyperbolizationFailed& e) {
    std::cerr << "precondition: " << e.what() << "\n";
    return 2;
  }
  std::ostringstream os;
  if (format == "json")
    write_certificate_json(os, cert);
  else
    write_certificate_text(os, cert);
  write_out(out, os.str());
  switch (cert.verdict) {
    case Verdict::Conjugate: return 0;
    case Verdict::Mismatch: return 1;
    default: return 3;
  }
}

int cmd_converge(const std::string& path, int gen, int pair, int nmax,
                 const std::string& start, const std::string& out) {
  const GroupFile gf = load_group_file(path);
  const auto lins = linear_parts(gf.group);
  if (gen < 1 || gen > static_cast<int>(lins.size()))
    throw MalformedInput("--gen out of range");
  std::ostringstream os;
  if (pair > 0) {
    if (pair > static_cast<int>(lins.size()))
      throw MalformedInput("--pair out of range");
    const auto [d_pm, d_0] = frame_distance_report(
        lins[static_cast<size_t>(gen - 1)], lins[static_cast<size_t>(pair - 1)]);
    os << "# d_pm\td_0\n"
       << format_real(d_pm) << '\t' << format_real(d_0) << '\n';
  } else {
    Vec3 v = start.empty() ? Vec3(0.2, 0.3, 1.0) : parse_triple(start);
    v.normalize();
    const auto rows =
        convergence_report(lins[static_cast<size_t>(gen - 1)], v, nmax);
    write_convergence_table(os, rows);
  }
  write_out(out, os.str());
  return 0;
}

int cmd_rank(const std::string& path, int max_len, const std::string& out) {
  const GroupFile gf = load_group_file(path);
  const auto lins = linear_parts(gf.group);
  const auto all_words =
      enumerate_words(gf.group.rank(), gf.group.orders, max_len);
  std::vector<Word> hyperbolic_words;
  for (const Word& w : all_words) {
    const AffineIso img = evaluate_word(gf.group, w);
    if (classify(img.linear) == IsometryClass::Hyperbolic)
      hyperbolic_words.push_back(w);
  }
  const int r = spectrum_map_rank(lins, hyperbolic_words);
  std::ostringstream os;
  os << "rank: " << r << "\n"
     << "dim_h1: " << 3 * gf.group.rank() - 3 << "\n"
     << "words_used: " << hyperbolic_words.size() << "\n";
  write_out(out, os.str());
  return 0;
}

int cmd_conjugate(const std::string& path, std::uint64_t seed, bool reflect,
                  bool time_reverse, Real trans_scale, const std::string& out) {
  GroupFile gf = load_group_file(path);
  Rng rng(seed);
  const AffineIso c = random_affine(rng, reflect, time_reverse, 1.2, trans_scale);
  for (auto& g : gf.group.gens) g = conjugate(c, g);
  gf.metadata.seed = seed;
  gf.metadata.description += " [conjugated]";
  if (out.empty()) throw MalformedInput("conjugate requires --out");
  save_group_file(out, gf);
  return 0;
}

int cmd_perturb(const std::string& path, const std::string& mode, Real delta,
                int gen, std::uint64_t seed, const std::string& out) {
  GroupFile gf = load_group_file(path);
  if (gen < 1 || gen > gf.group.rank()) throw MalformedInput("--gen out of range");
  const size_t j = static_cast<size_t>(gen - 1);
  Rng rng(seed);
  if (mode == "eigenvalue" || mode == "direction") {
    const NullFrame f = null_frame(gf.group.gens[j].linear);
    if (mode == "eigenvalue") {
      gf.group.gens[j].linear = from_frame(f.xm, f.xp, f.lambda * (1 + delta));
    } else {
      const Real angle = boundary_angle(f.xp) + delta;
      gf.group.gens[j].linear = from_frame(f.xm, boundary_point(angle), f.lambda);
    }
  } else if (mode == "translation") {
    // random unit direction in the complement of the coboundary block
    const int n = gf.group.rank();
    Eigen::MatrixXd b(3 * n, 3);
    for (int i = 0; i < n; ++i)
      b.middleRows<3>(3 * i) =
          Mat3::Identity() - gf.group.gens[static_cast<size_t>(i)].linear.m;
    const Eigen::BDCSVD<Eigen::MatrixXd> svd(b, Eigen::ComputeFullU);
    const Eigen::MatrixXd comp = svd.matrixU().rightCols(3 * n - 3);
    Eigen::VectorXd coeff(comp.cols());
    for (long i = 0; i < coeff.size(); ++i) coeff(i) = rng.uniform(-1, 1);
    Eigen::VectorXd dir = comp * coeff;
    dir.normalize();
    for (int i = 0; i < n; ++i)
      gf.group.gens[static_cast<size_t>(i)].trans += delta * dir.segment<3>(3 * i);
  } else {
    throw MalformedInput("--mode must be eigenvalue, direction or translation");
  }
  gf.metadata.description += " [perturbed " + mode + "]";
  if (out.empty()) throw MalformedInput("perturb requires --out");
  save_group_file(out, gf);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"affine Lorentzian groups: spectra and isospectrality"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "write a verified Schottky deformation");
  int rank = 2;
  std::uint64_t seed = 0;
  Real t_min = std::log(2.0), t_max = std::log(6.0);
  Real theta_jitter = 0.15, cocycle_scale = 0.4, margin = 1e-3;
  std::string description, out;
  gen->add_option("--rank", rank, "number of generators")->capture_default_str();
  gen->add_option("--seed", seed, "random seed")->capture_default_str();
  gen->add_option("--t-min", t_min, "boost strength lower bound")->capture_default_str();
  gen->add_option("--t-max", t_max, "boost strength upper bound")->capture_default_str();
  gen->add_option("--theta-jitter", theta_jitter, "axis angle jitter")->capture_default_str();
  gen->add_option("--cocycle-scale", cocycle_scale, "translation magnitude")->capture_default_str();
  gen->add_option("--margin", margin, "required angular gap")->capture_default_str();
  gen->add_option("--description", description, "free-form note");
  gen->add_option("--out", out, "output group file")->required();

  // spectrum
  auto* spec = app.add_subcommand("spectrum", "marked invariant spectrum of a group file");
  std::string group_path, format = "table";
  int max_len = 3;
  spec->add_option("group", group_path, "group file")->required();
  spec->add_option("--max-len", max_len, "maximum word letter length")->capture_default_str();
  spec->add_option("--out", out, "output file (default stdout)");
  spec->add_option("--format", format, "table or json")->capture_default_str();

  // reconstruct
  auto* rec = app.add_subcommand("reconstruct", "decide affine conjugacy from spectra");
  std::string path_a, path_b;
  Real tol = 1e-8;
  rec->add_option("a", path_a, "first group file")->required();
  rec->add_option("b", path_b, "second group file")->required();
  rec->add_option("--max-len", max_len, "spectrum comparison depth")->capture_default_str();
  rec->add_option("--tol", tol, "invariant comparison tolerance")->capture_default_str();
  rec->add_option("--out", out, "certificate output (default stdout)");
  rec->add_option("--format", format, "text or json")->capture_default_str();

  // converge
  auto* conv = app.add_subcommand("converge", "projective convergence / frame distance reports");
  int gen_idx = 1, pair_idx = 0, nmax = 20;
  std::string start;
  conv->add_option("group", group_path, "group file")->required();
  conv->add_option("--gen", gen_idx, "generator (1-based)")->capture_default_str();
  conv->add_option("--pair", pair_idx, "second generator for a frame-distance row");
  conv->add_option("--nmax", nmax, "iteration count")->capture_default_str();
  conv->add_option("--start", start, "start vector 'x,y,z' (normalized)");
  conv->add_option("--out", out, "output file (default stdout)");

  // rank
  auto* rnk = app.add_subcommand("rank", "rank of the invariant functional on deformations");
  rnk->add_option("group", group_path, "group file")->required();
  rnk->add_option("--max-len", max_len, "word length cap")->capture_default_str();
  rnk->add_option("--out", out, "output file (default stdout)");

  // conjugate
  auto* conj = app.add_subcommand("conjugate", "apply a seeded random affine conjugation");
  bool reflect = false, time_reverse = false;
  Real trans_scale = 1.0;
  conj->add_option("group", group_path, "group file")->required();
  conj->add_option("--seed", seed, "random seed")->capture_default_str();
  conj->add_flag("--reflect", reflect, "allow orientation-reversing linear part");
  conj->add_flag("--time-reverse", time_reverse, "allow time-reversing linear part");
  conj->add_option("--trans-scale", trans_scale, "translation magnitude")->capture_default_str();
  conj->add_option("--out", out, "output group file")->required();

  // perturb
  auto* pert = app.add_subcommand("perturb", "perturb one parameter of a group file");
  std::string mode = "translation";
  Real delta = 1e-3;
  pert->add_option("group", group_path, "group file")->required();
  pert->add_option("--mode", mode, "eigenvalue, direction or translation")->capture_default_str();
  pert->add_option("--delta", delta, "perturbation size")->capture_default_str();
  pert->add_option("--gen", gen_idx, "generator (1-based)")->capture_default_str();
  pert->add_option("--seed", seed, "random seed")->capture_default_str();
  pert->add_option("--out", out, "output group file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen)
      return cmd_generate(rank, seed, t_min, t_max, theta_jitter, cocycle_scale,
                          margin, description, out);
    if (*spec) return cmd_spectrum(group_path, max_len, out, format);
    if (*rec) return cmd_reconstruct(path_a, path_b, max_len, tol, out, format);
    if (*conv) return cmd_converge(group_path, gen_idx, pair_idx, nmax, start, out);
    if (*rnk) return cmd_rank(group_path, max_len, out);
    if (*conj)
      return cmd_conjugate(group_path, seed, reflect, time_reverse, trans_scale, out);
    if (*pert) return cmd_perturb(group_path, mode, delta, gen_idx, seed, out);
  } catch (const FailedToSeparate& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
