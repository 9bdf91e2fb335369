// Writes Chu-Beasley style MKP instances with their exact optima in mknap format.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fwcuts/instance.hpp"
#include "fwcuts_test/generators.hpp"
#include "fwcuts_test/mkp_reference.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Generate MKP instances with exact optima"};
  std::size_t count = 20;
  std::size_t n = 100;
  std::size_t m = 5;
  double tightness = 0.25;
  std::uint64_t seed = 1;
  std::string out_path;
  app.add_option("--count", count)->capture_default_str();
  app.add_option("-n", n)->capture_default_str();
  app.add_option("-m", m)->capture_default_str();
  app.add_option("--tightness", tightness)->capture_default_str();
  app.add_option("--seed", seed)->capture_default_str();
  app.add_option("--out", out_path)->required();
  CLI11_PARSE(app, argc, argv);

  fwcuts::testing::Rng rng(seed);
  std::vector<fwcuts::MkpInstance> instances;
  for (std::size_t k = 0; k < count; ++k) {
    auto inst = fwcuts::testing::chu_beasley(rng, n, m, tightness, "cb" + std::to_string(k + 1));
    const auto opt = fwcuts::testing::solve_mkp_exact(inst);
    if (!opt.value) {
      std::cerr << inst.name << ": node limit reached\n";
      return 1;
    }
    inst.known_optimum = *opt.value;
    std::cerr << inst.name << ": optimum " << *opt.value << " (" << opt.nodes << " nodes)\n";
    instances.push_back(std::move(inst));
  }
  std::ofstream out(out_path);
  out << fwcuts::format_mknap(instances);
  return out ? 0 : 1;
}
