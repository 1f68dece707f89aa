#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "twistor/cli.hpp"

namespace {

bool parse_point(const std::string& s, twistor::Vec4& p) {
  std::istringstream in(s);
  std::string part;
  int i = 0;
  while (std::getline(in, part, ',')) {
    if (i == 4) return false;
    try {
      std::size_t used = 0;
      p(i++) = std::stod(part, &used);
      if (used != part.size()) return false;
    } catch (...) {
      return false;
    }
  }
  return i == 4;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Self-dual instanton identities and the fourth-order transgression check"};
  app.require_subcommand(1, 1);

  twistor::RunConfig cfg;
  std::string point, out;
  double t = 0.0, r_max = 0.0;
  int n = 0;
  std::string groups;

  for (const auto& name : twistor::RunConfig::commands()) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--rho", cfg.rho, "instanton size")->capture_default_str();
    sub->add_option("--point", point, "x as f,f,f,f");
    if (name == "series") sub->add_option("--t", t, "|x|^2/rho^2");
    sub->add_option("--order", cfg.order, "series order")->capture_default_str();
    sub->add_option("--rmax", r_max, "grid radius (8 rho theorem, 100 rho charge)");
    sub->add_option("--n", n, "grid intervals (400 theorem, 4000 charge)");
    sub->add_option("--stretch", cfg.stretch, "charge grid stretch")->capture_default_str();
    sub->add_option("--fd-step", cfg.fd_step, "finite-difference step, 0 = automatic")->capture_default_str();
    sub->add_option("--seed", cfg.seed)->capture_default_str();
    sub->add_option("--format", cfg.format)->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
    sub->add_option("--out", out, "write here instead of stdout");
    if (name == "verify-theorem")
      sub->add_option("--mode", cfg.mode, "transgression source")->check(CLI::IsMember({"series", "analytic"}))->capture_default_str();
    if (name == "selftest") sub->add_option("--groups", groups, "comma separated subset");
    sub->callback([&cfg, name] { cfg.command = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  CLI::App* sub = app.get_subcommands().front();
  auto given = [sub](const char* flag) {
    const CLI::Option* o = sub->get_option_no_throw(flag);
    return o != nullptr && o->count() > 0;
  };
  if (given("--point")) {
    twistor::Vec4 p;
    if (!parse_point(point, p)) {
      std::cerr << "error: --point needs four comma separated numbers\n" << sub->help();
      return 2;
    }
    cfg.point = p;
  }
  if (given("--t")) cfg.t = t;
  if (given("--rmax")) cfg.r_max = r_max;
  if (given("--n")) cfg.n = n;
  if (given("--out")) cfg.out = out;
  if (given("--groups")) {
    std::istringstream in(groups);
    for (std::string g; std::getline(in, g, ',');)
      if (!g.empty()) cfg.groups.push_back(g);
  }

  const int code = twistor::run(cfg, std::cout, std::cerr);
  if (code == 2) std::cerr << sub->help();
  return code;
}
