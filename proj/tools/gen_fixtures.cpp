// Seeded fixture generator. Every instance is random_manifold(tets, boundary)
// drawn from mt19937_64(seed); the same arguments always produce the same files.

#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "crushkit/io.hpp"
#include "search.hpp"

namespace fs = std::filesystem;
using namespace crushkit;
using crushkit::search::Instance;

namespace {

void write_file(const fs::path& p, const std::string& content) {
  std::ofstream out(p, std::ios::binary);
  out << content;
  if (!out) throw std::runtime_error("cannot write " + p.string());
}

std::string instance_line(const Instance& i) {
  return i.role + " tets=" + std::to_string(i.tets) + " boundary=" + std::to_string(i.boundary) +
         " seed=" + std::to_string(i.seed) + " outcome=" + i.outcome;
}

void archive(const fs::path& dir, const Instance& i, std::string& index) {
  std::string tri = "# seeded instance: " + instance_line(i) + "\nname " + i.role + "\n" + format_triangulation(i.tri);
  write_file(dir / (i.role + ".tri"), tri);
  if (!i.surfaces.empty())
    write_file(dir / (i.role + ".surf"),
               format_surfaces(i.role, i.tri.size(), {{"role", i.role}, {"count", std::to_string(i.surfaces.size())}},
                               i.surfaces));
  index += instance_line(i) + "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generate the seeded fixture corpus"};
  std::string out_dir = "fixtures/generated";
  std::uint64_t max_seed = 2000;
  app.add_option("-o,--out", out_dir, "output directory");
  app.add_option("--max-seed", max_seed, "seeds scanned per search");
  CLI11_PARSE(app, argc, argv);

  try {
    fs::create_directories(out_dir);
    std::string index = "# role tets boundary seed outcome; absent roles list the seeds scanned\n";
    const std::vector<std::string> obstructions = {"XEqualsProduct", "NontrivialProduct", "CycleOfTruncatedPrisms"};
    auto crush = search::find_crush_instances(5, obstructions, max_seed);
    for (const auto& i : crush.successes) archive(out_dir, i, index);
    for (const auto& name : obstructions) {
      if (auto it = crush.obstructions.find(name); it != crush.obstructions.end())
        archive(out_dir, it->second, index);
      else
        index += "crush_" + name + " absent tets=2 boundary=0 seeds=" + std::to_string(crush.seeds_scanned) + "\n";
    }
    auto optional_archive = [&](const std::optional<Instance>& i, const std::string& role) {
      if (i)
        archive(out_dir, *i, index);
      else
        index += role + " absent seeds=" + std::to_string(max_seed) + "\n";
    };
    optional_archive(search::find_sphere_witness(max_seed), "zero_fails_sphere");
    optional_archive(search::find_annular("annular_holds_2", 2, Verdict::Holds, max_seed), "annular_holds_2");
    optional_archive(search::find_annular("annular_holds_3", 3, Verdict::Holds, max_seed), "annular_holds_3");
    optional_archive(search::find_annular("annular_fails", 3, Verdict::Fails, max_seed), "annular_fails");
    optional_archive(search::find_sum_cases(max_seed), "thin_sums");
    write_file(fs::path(out_dir) / "INDEX", index);
    std::cout << index;
  } catch (const std::exception& e) {
    std::cerr << "gen_fixtures: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
