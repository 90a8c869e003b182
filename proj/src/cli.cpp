#include "cubecx/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <functional>
#include <sstream>

#include "CLI11.hpp"
#include "cubecx/assembly.hpp"
#include "cubecx/coloring.hpp"
#include "cubecx/covers.hpp"
#include "cubecx/gluing.hpp"
#include "cubecx/io.hpp"
#include "cubecx/special.hpp"
#include "cubecx/walls.hpp"

namespace cubecx::cli {

namespace {

const char* yes(bool b) { return b ? "true" : "false"; }

std::string join(const std::vector<int>& v, const char* sep = " ") {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? sep : "") << v[i];
  return os.str();
}

int cmd_check(const std::string& file, std::ostream& out) {
  RawComplex raw = io::parse_complex(io::read_file(file), file);
  ValidationReport rep = validate(raw);
  out << "cubecx check v1\n";
  out << "vertices: " << raw.vertices.size() << "\n";
  out << "cubes: " << raw.cubes.size() << "\n";
  out << "valid: " << yes(rep.ok()) << "\n";
  if (!rep.ok()) {
    out << rep.str();
    return 1;
  }
  CubeComplex cx = CubeComplex::from_raw(raw);
  out << "dimension: " << cx.dimension() << "\n";
  for (int d = 1; d <= cx.dimension(); ++d) out << "dim " << d << ": " << cx.count_dim(d) << "\n";
  bool conn = cx.connected();
  NpcResult npc = is_npc(cx);
  SimpleResult simple = is_simple(cx);
  out << "connected: " << yes(conn) << "\n";
  out << "npc: " << yes(npc.npc) << "\n";
  if (!npc.npc) out << "npc_witness_vertex: " << cx.name(npc.vertex) << "\n";
  out << "simple: " << yes(simple.simple) << "\n";
  if (conn && npc.npc) out << "simply_connected: " << yes(certify_simply_connected(cx)) << "\n";
  else out << "simply_connected: n/a\n";
  return 0;
}

int cmd_walls(const std::string& file, const std::string& dot, std::ostream& out) {
  CubeComplex cx = io::load_complex(file);
  WallSet ws(cx);
  out << "cubecx walls v1\n";
  out << "walls: " << ws.size() << "\n";
  bool sc = cx.connected() && is_npc(cx).npc && certify_simply_connected(cx);
  for (const auto& w : ws.all()) {
    SidePartition sp = side_partition(cx, ws, w.id);
    out << "W" << w.id << ": edges [" << join(w.dual_edges) << "] carrier_cubes " << w.carrier_cubes.size()
        << " sides " << sp.classes.size();
    if (sc && sp.two_sided()) {
      HalfSpacePair hp = half_spaces(cx, ws, sp);
      out << " split " << hp.plus.size() << "/" << hp.minus.size();
    }
    out << "\n";
  }
  out << "intersections:";
  for (int a = 0; a < ws.size(); ++a)
    for (int b = a + 1; b < ws.size(); ++b)
      if (ws.intersect(a, b)) out << " " << a << "-" << b;
  out << "\n";
  if (!dot.empty()) io::write_file(dot, walls_dot(cx, ws));
  return 0;
}

int cmd_special(const std::string& file, std::ostream& out) {
  CubeComplex cx = io::load_complex(file);
  SpecialnessReport r = check_c_special(cx);
  out << format_report(cx, r);
  return r.verdict ? 0 : 1;
}

int cmd_develop(const std::string& file, const std::string& base, int radius, const std::string& path,
                std::ostream& out) {
  CubeComplex cx = io::load_complex(file);
  auto v = cx.find_vertex(base);
  if (!v) throw PreconditionError("unknown vertex '" + base + "'");
  DevelopedBall b = develop(cx, *v, radius);
  out << "cubecx develop v1\n";
  out << "base: " << base << "\nradius: " << radius << "\n";
  out << "vertices: " << b.ball.num_vertices() << "\n";
  for (int d = 1; d <= b.ball.dimension(); ++d) out << "dim " << d << ": " << b.ball.count_dim(d) << "\n";
  int maxl = b.layer.empty() ? 0 : *std::max_element(b.layer.begin(), b.layer.end());
  for (int l = 0; l <= maxl; ++l)
    out << "layer " << l << ": " << std::count(b.layer.begin(), b.layer.end(), l) << "\n";
  if (!path.empty()) io::write_file(path, io::dump_complex(b.ball.to_raw()));
  return 0;
}

int default_radius(const CubeComplex& cx, int r) { return r >= 0 ? r : cx.diameter(); }

int cmd_gamma(const std::string& file, int radius, const std::string& dot, std::ostream& out) {
  CubeComplex cx = io::load_complex(file);
  WallSet ws(cx);
  WallGraph g = build_gamma(cx, ws, default_radius(cx, radius));
  out << "cubecx gamma v1\n";
  out << "radius: " << g.radius << "\nnodes: " << g.size() << "\n";
  out << "max_degree: " << g.max_degree() << "\n";
  out << "edges:";
  for (auto [a, b] : g.edges()) out << " " << a << "-" << b;
  out << "\n";
  if (!dot.empty()) io::write_file(dot, gamma_dot(g));
  return 0;
}

int cmd_color(const std::string& file, int radius, std::ostream& out) {
  CubeComplex cx = io::load_complex(file);
  WallSet ws(cx);
  WallGraph g = build_gamma(cx, ws, default_radius(cx, radius));
  Coloring c = greedy_coloring(g);
  out << "cubecx color v1\n";
  out << "radius: " << g.radius << "\nnodes: " << g.size() << "\nk: " << g.max_degree() << "\n";
  out << "colors_used: " << num_colors(c) << "\n";
  out << "proper: " << yes(is_proper(g, c)) << "\n";
  out << "coloring: " << io::dump_coloring(c);
  return is_proper(g, c) ? 0 : 1;
}

int cmd_reduce(const std::string& gamma_path, const std::string& col_path, int n, std::ostream& out) {
  WallGraph g = io::parse_gamma(io::read_file(gamma_path), gamma_path);
  Coloring c = io::parse_coloring(io::read_file(col_path), g.size(), col_path);
  Coloring r = reduce_coloring(g, c, n);
  out << io::dump_coloring(r);
  return 0;
}

int cmd_solve(const std::string& mpath, const std::string& hpath, std::ostream& out) {
  IntMatrix a = io::parse_matrix(io::read_file(mpath), mpath);
  std::vector<Rational> hint = io::parse_vector(io::read_file(hpath), hpath);
  if (!a.empty() && a[0].size() != hint.size())
    throw PreconditionError("hint has " + std::to_string(hint.size()) + " entries, matrix has " +
                            std::to_string(a[0].size()) + " columns");
  KernelResult k = nonneg_integer_kernel(a, hint);
  out << "cubecx solve-gluing v1\n";
  out << "columns: " << hint.size() << "\nsupport: " << k.support << "\nkernel_dim: " << k.kernel_dim << "\n";
  out << "strategy: " << k.strategy << "\n";
  out << "w:";
  for (const auto& x : k.w) out << " " << to_string(x);
  out << "\n";
  return 0;
}

int cmd_hierarchy(const std::string& file, const std::string& group, int radius, const std::string& measure,
                  const std::string& trace, std::ostream& out) {
  CubeComplex cx = io::load_complex(file);
  GroupAction g = group.empty() ? GroupAction::trivial(cx) : io::load_group(cx, group);
  HierarchyOptions opt;
  opt.radius = radius;
  if (measure == "uniform") opt.measure = MeasureKind::kUniform;
  else if (measure != "orbit") throw PreconditionError("unknown measure '" + measure + "'");
  HierarchyTrace t = run_hierarchy(cx, g, opt);
  std::string text = format_trace(t);
  out << text;
  if (!trace.empty()) {
    std::filesystem::create_directories(trace);
    io::write_file((std::filesystem::path(trace) / "summary.txt").string(), text);
    for (const auto& l : t.levels) {
      std::string name = "level_" + std::to_string(l.j) + ".txt";
      io::write_file((std::filesystem::path(trace) / name).string(), format_level(t.ambient, l));
    }
  }
  return t.ok ? 0 : 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cube complexes, walls, specialness, colourings and the cut-and-reglue hierarchy", "cubecx"};
  app.require_subcommand(1);
  std::string file, dot, base, path, gamma_path, col_path, mpath, hpath, group, trace, measure = "orbit";
  int radius = -1, n = 0;
  std::function<int()> action;

  auto* check = app.add_subcommand("check", "validate a complex and report NPC, simplicity, simple connectivity");
  check->add_option("file", file)->required();
  check->callback([&] { action = [&] { return cmd_check(file, out); }; });

  auto* walls = app.add_subcommand("walls", "list walls, sides and half-space splits");
  walls->add_option("file", file)->required();
  walls->add_option("--dot", dot, "write the wall-crossing graph");
  walls->callback([&] { action = [&] { return cmd_walls(file, dot, out); }; });

  auto* special = app.add_subcommand("special", "C-specialness report");
  special->add_option("file", file)->required();
  special->callback([&] { action = [&] { return cmd_special(file, out); }; });

  auto* dev = app.add_subcommand("develop", "ball of the universal cover");
  dev->add_option("file", file)->required();
  dev->add_option("--base", base)->required();
  dev->add_option("--radius", radius)->required()->check(CLI::NonNegativeNumber);
  dev->add_option("--out", path, "write the ball as a complex file");
  dev->callback([&] { action = [&] { return cmd_develop(file, base, radius, path, out); }; });

  auto* gam = app.add_subcommand("gamma", "wall graph within distance R");
  gam->add_option("file", file)->required();
  gam->add_option("--radius", radius, "default: diameter")->check(CLI::NonNegativeNumber);
  gam->add_option("--dot", dot);
  gam->callback([&] { action = [&] { return cmd_gamma(file, radius, dot, out); }; });

  auto* col = app.add_subcommand("color", "greedy proper colouring of the wall graph");
  col->add_option("file", file)->required();
  col->add_option("--radius", radius, "default: diameter")->check(CLI::NonNegativeNumber);
  col->callback([&] { action = [&] { return cmd_color(file, radius, out); }; });

  auto* red = app.add_subcommand("reduce", "apply the colour reduction p_n");
  red->add_option("--gamma", gamma_path)->required();
  red->add_option("--coloring", col_path)->required();
  red->add_option("--n", n)->required();
  red->callback([&] { action = [&] { return cmd_reduce(gamma_path, col_path, n, out); }; });

  auto* sol = app.add_subcommand("solve-gluing", "positive integer solution of A w = 0");
  sol->add_option("--matrix", mpath)->required();
  sol->add_option("--hint", hpath)->required();
  sol->callback([&] { action = [&] { return cmd_solve(mpath, hpath, out); }; });

  auto* hier = app.add_subcommand("hierarchy", "run the cut-and-reglue hierarchy");
  hier->add_option("file", file)->required();
  hier->add_option("--group", group, "group action file");
  hier->add_option("--radius", radius, "default: diameter")->check(CLI::NonNegativeNumber);
  hier->add_option("--measure", measure, "orbit or uniform");
  hier->add_option("--trace", trace, "directory for per-level snapshots");
  hier->callback([&] { action = [&] { return cmd_hierarchy(file, group, radius, measure, trace, out); }; });

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  try {
    return action ? action() : 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace cubecx::cli
