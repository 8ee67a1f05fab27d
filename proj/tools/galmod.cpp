#include <iostream>
#include <stdexcept>

#include <CLI11.hpp>

#include "commands.hpp"
#include "galmod/expr_parser.hpp"

using galmod::cli::Options;

namespace {

void tower_flags(CLI::App* sub, Options& o) {
  sub->add_option("--p", o.p, "residue characteristic")->required();
  sub->add_option("--h1", o.h1, "first jump datum, x1^p - x1 = t^-h1")->required();
  sub->add_option("--h2", o.h2, "second datum; omit for a single step");
  sub->add_option("--prec", o.prec, "t-adic working precision (env GALMOD_PREC)");
  sub->add_option("--seed", o.seed, "seed for sampled checks");
  sub->add_option("--format", o.format, "json or text")->check(CLI::IsMember({"json", "text"}));
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  o.prec = galmod::cli::default_prec();
  CLI::App app{"galmod: Galois modules of elementary abelian wild extensions"};
  app.require_subcommand(1);

  auto* build = app.add_subcommand("build", "construct the tower and print its data");
  auto* jumps = app.add_subcommand("jumps", "ramification jumps, different and depth");
  auto* depth = app.add_subcommand("depth", "depth of ramification");
  auto* dtable = app.add_subcommand("dtable", "d(f_ij) and rho(f_ij) against H and P");
  auto* basis = app.add_subcommand("basis", "lattice basis of the associated module A_l");
  auto* order = app.add_subcommand("order", "lattice basis of the associated order A(i,j)");
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  auto* gamma = app.add_subcommand("gamma", "antichain of phi^-1 of an element");
  auto* diag = app.add_subcommand("diag", "diagonality after a tame lift");
  auto* selftest = app.add_subcommand("selftest", "quick internal consistency run");
  for (auto* s : {build, jumps, depth, dtable, basis, order, verify, gamma, diag}) tower_flags(s, o);
  selftest->add_option("--prec", o.prec, "t-adic working precision");
  selftest->add_option("--format", o.format)->check(CLI::IsMember({"json", "text"}));

  dtable->add_flag("--literal", o.literal, "also compare against the literal P forms");
  basis->add_option("--l", o.l, "module index")->required();
  basis->add_option("--subfield", o.subfield, "k0 = F_p((t^m))");
  order->add_option("--i", o.i)->required();
  order->add_option("--j", o.j)->required();
  order->add_option("--subfield", o.subfield, "k0 = F_p((t^m))");
  verify->add_option("--suite", o.suite, "ram, tcomp, tmain, trel, tlift or all")
      ->check(CLI::IsMember({"ram", "tcomp", "tmain", "trel", "tlift", "all"}));
  verify->add_option("--sigmas", o.sigmas, "comma separated group elements for tcomp");
  verify->add_option("--subfield", o.subfield, "m for trel (default p)");
  verify->add_option("--lift-e", o.lift_e, "tame degree for tlift");
  verify->add_option("--samples", o.samples, "sampled combinations per class");
  gamma->add_option("--elem", o.elem, "group algebra expression")->required();
  diag->add_option("--lift-e", o.lift_e, "tame degree")->required();
  diag->add_option("--samples", o.samples, "sampled combinations per class");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : galmod::cli::kUsage;
  }
  for (const auto* s : app.get_subcommands()) o.verb = s->get_name();

  try {
    std::string err;
    const auto res = galmod::cli::run(o, &err);
    if (!res.out.empty()) {
      std::cout << res.out;
      if (res.out.back() != '\n') std::cout << '\n';
    }
    if (!err.empty()) std::cerr << "galmod: " << err << '\n';
    return res.code;
  } catch (const galmod::ParseError& e) {
    std::cerr << "galmod: syntax error: " << e.what() << '\n';
    return galmod::cli::kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "galmod: " << e.what() << '\n';
    return galmod::cli::kUsage;
  } catch (const std::exception& e) {
    std::cerr << "galmod: internal error: " << e.what() << '\n';
    return galmod::cli::kVerdictFail;
  }
}
