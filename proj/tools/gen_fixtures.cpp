// Writes every named fixture as <dir>/<name>.cc, plus group files for the
// fixtures that come with an action.
#include <filesystem>
#include <iostream>

#include "cubecx/fixtures.hpp"
#include "cubecx/io.hpp"

int main(int argc, char** argv) {
  namespace fx = cubecx::fixtures;
  std::filesystem::path dir = argc > 1 ? argv[1] : ".";
  std::filesystem::create_directories(dir);
  for (const auto& name : fx::names()) {
    auto cx = fx::by_name(name);
    cubecx::io::write_file((dir / (name + ".cc")).string(), cubecx::io::dump_complex(cx.to_raw()));
  }
  auto broom = fx::broom();
  cubecx::io::write_file((dir / "broom_swap.group").string(), cubecx::io::dump_group(broom, fx::broom_swap(broom)));
  auto sq = fx::square();
  cubecx::io::write_file((dir / "square_rotation.group").string(),
                         cubecx::io::dump_group(sq, fx::square_rotation(sq)));
  auto grid = fx::grid(2, 2);
  cubecx::io::write_file((dir / "grid2x2_rotation.group").string(),
                         cubecx::io::dump_group(grid, fx::grid_rotation(grid)));
  std::cout << "wrote fixtures to " << dir << "\n";
}
