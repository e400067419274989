// bbbench: run Barzilai-Borwein gradient descent over a grid of methods,
// tolerances and first-step steplengths, and write a summary table.

#include <bbstep/bench.hpp>

#include <exception>
#include <iostream>
#include <string>
#include <vector>

int main(int argc, char **argv) {
  using namespace bbstep;

  std::vector<std::string> args(argv + 1, argv + argc);
  BenchConfig cfg;
  try {
    cfg = parse_config(args);
  } catch (const HelpRequested &h) {
    std::cout << h.what();
    return 0;
  } catch (const UsageError &e) {
    std::cerr << "bbbench: " << e.what() << '\n';
    return 2;
  }

  try {
    const auto rows = run_benchmark(cfg);
    if (cfg.out) {
      emit_summary(rows, cfg.format, *cfg.out);
    } else {
      write_summary(std::cout, rows, cfg.format);
    }
    if (cfg.table1 && !cfg.out && cfg.format == OutputFormat::markdown) {
      std::cout << '\n';
      write_reference_markdown(std::cout);
    } else if (cfg.table1) {
      write_reference_markdown(std::cerr);
    }
  } catch (const std::exception &e) {
    std::cerr << "bbbench: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
