#include "carnot/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace carnot {

namespace {

using nlohmann::json;

json cell_record(const GridCell& cell, int64_t coeff, int n) {
  json rec;
  rec["scale"] = cell.scale;
  rec["dim"] = cell.dim();
  json axes = json::array();
  for (int j = 0; j < n; ++j)
    if (cell.spans(j)) axes.push_back(j);
  rec["axes"] = std::move(axes);
  json corner = json::array();
  for (int j = 0; j < n; ++j) corner.push_back(cell.corner[j]);
  rec["corner"] = std::move(corner);
  rec["coeff"] = coeff;
  return rec;
}

std::pair<GridCell, int64_t> parse_cell(const json& rec, int expected_n, Vec* anchor) {
  GridCell cell;
  cell.scale = rec.at("scale").get<int32_t>();
  if (cell.scale < 0) throw std::invalid_argument("negative scale in chain file");
  for (int a : rec.at("axes").get<std::vector<int>>()) {
    if (a < 0 || a >= expected_n) throw std::invalid_argument("axis out of range in chain file");
    cell.axes |= 1u << a;
  }
  auto corner = rec.at("corner").get<std::vector<int64_t>>();
  if (static_cast<int>(corner.size()) != expected_n)
    throw std::invalid_argument("corner length does not match the group dimension");
  for (int j = 0; j < expected_n; ++j) cell.corner[j] = corner[j];
  if (rec.at("dim").get<int>() != cell.dim())
    throw std::invalid_argument("dim field disagrees with the axes list");
  int64_t coeff = rec.at("coeff").get<int64_t>();
  if (coeff == 0) throw std::invalid_argument("zero coefficient in chain file");
  if (anchor) {
    anchor->fill(0);
    if (rec.contains("anchor")) {
      auto a = rec.at("anchor").get<std::vector<int64_t>>();
      if (static_cast<int>(a.size()) != expected_n)
        throw std::invalid_argument("anchor length does not match the group dimension");
      for (int j = 0; j < expected_n; ++j) (*anchor)[j] = a[j];
    }
  } else if (rec.contains("anchor")) {
    throw std::invalid_argument("plain chain file must not carry anchors");
  }
  return {cell, coeff};
}

std::ofstream open_out(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

std::vector<json> read_records(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::vector<json> records;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    records.push_back(json::parse(line));
  }
  return records;
}

}  // namespace

void save_chain(const std::filesystem::path& path, const Chain& c, int n) {
  std::ofstream out = open_out(path);
  for (auto& [cell, coeff] : c.cells) out << cell_record(cell, coeff, n) << "\n";
}

Chain load_chain(const std::filesystem::path& path, int expected_n) {
  std::vector<json> records = read_records(path);
  Chain c;
  bool first = true;
  for (const json& rec : records) {
    auto [cell, coeff] = parse_cell(rec, expected_n, nullptr);
    if (first) {
      c.scale = cell.scale;
      c.dim = cell.dim();
      first = false;
    }
    if (cell.scale != c.scale || cell.dim() != c.dim)
      throw std::invalid_argument("chain file mixes scales or dimensions");
    c.cells[cell] += coeff;
    if (c.cells[cell] == 0) c.cells.erase(cell);
  }
  return c;
}

void save_multiscale(const std::filesystem::path& path, const MultiscaleChain& m, int n) {
  std::ofstream out = open_out(path);
  for (const MultiscalePart& part : m.parts) {
    json anchor = json::array();
    for (int j = 0; j < n; ++j) anchor.push_back(part.anchor[j]);
    for (auto& [cell, coeff] : part.chain.cells) {
      json rec = cell_record(cell, coeff, n);
      rec["anchor"] = anchor;
      out << rec << "\n";
    }
  }
}

MultiscaleChain load_multiscale(const std::filesystem::path& path, int expected_n) {
  std::vector<json> records = read_records(path);
  std::map<int32_t, MultiscalePart> parts;
  int dim = -1;
  for (const json& rec : records) {
    Vec anchor{};
    auto [cell, coeff] = parse_cell(rec, expected_n, &anchor);
    if (dim == -1) dim = cell.dim();
    if (cell.dim() != dim) throw std::invalid_argument("multiscale file mixes dimensions");
    auto [it, inserted] = parts.try_emplace(cell.scale);
    MultiscalePart& part = it->second;
    if (inserted) {
      part.scale = cell.scale;
      part.anchor = anchor;
      part.chain.scale = cell.scale;
      part.chain.dim = dim;
    } else if (part.anchor != anchor) {
      throw std::invalid_argument("multiscale file mixes anchors within one scale");
    }
    part.chain.cells[cell] += coeff;
    if (part.chain.cells[cell] == 0) part.chain.cells.erase(cell);
  }
  MultiscaleChain m;
  m.dim = dim < 0 ? 0 : dim;
  for (auto& [scale, part] : parts) m.parts.push_back(std::move(part));
  return m;
}

GroupSpec parse_group_spec(const std::string& json_text) {
  json doc = json::parse(json_text);
  GroupSpec g;
  g.name = doc.value("name", std::string("custom"));
  g.m1 = doc.at("m1").get<int>();
  g.m2 = doc.at("m2").get<int>();
  for (const json& e : doc.at("beta")) {
    if (!e.is_array() || e.size() != 4)
      throw std::invalid_argument("beta entries must be [i, j, k, value]");
    g.beta.push_back({e[0].get<int>(), e[1].get<int>(), e[2].get<int>(), e[3].get<int64_t>()});
  }
  if (doc.contains("k")) g.k_override = doc.at("k").get<std::vector<int>>();
  validate(g);
  return g;
}

GroupSpec load_group_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_group_spec(ss.str());
}

std::string group_spec_to_json(const GroupSpec& g) {
  json doc;
  doc["name"] = g.name;
  doc["m1"] = g.m1;
  doc["m2"] = g.m2;
  json beta = json::array();
  for (const BetaEntry& e : g.beta) beta.push_back(json::array({e.i, e.j, e.k, e.value}));
  doc["beta"] = std::move(beta);
  if (!g.k_override.empty()) doc["k"] = g.k_override;
  return doc.dump();
}

std::string report_to_json(const GroupSpec& g, const FillingReport& rep) {
  json doc;
  doc["group"] = g.name;
  json plan;
  plan["dim"] = rep.plan.dim;
  plan["input_mass"] = rep.plan.input_mass;
  plan["scale_count"] = rep.plan.scale_count;
  plan["predicted_exponent_num"] = numerator(rep.plan.predicted_exponent).convert_to<int64_t>();
  plan["predicted_exponent_den"] = denominator(rep.plan.predicted_exponent).convert_to<int64_t>();
  plan["c_plan"] = to_double(rep.plan.c_plan);
  doc["plan"] = std::move(plan);
  json steps = json::array();
  for (const StepRecord& s : rep.steps) {
    json step;
    step["scale"] = s.scale;
    json off = json::array();
    for (int j = 0; j < kMaxN; ++j) off.push_back(s.offset.o[j]);
    step["offset"] = std::move(off);
    step["alpha_l1"] = s.alpha_l1;
    step["bridge_l1"] = s.bridge_l1;
    step["bridge_mass"] = s.bridge_mass;
    steps.push_back(std::move(step));
  }
  doc["steps"] = std::move(steps);
  doc["scales_used"] = rep.scales_used;
  doc["residual_l1"] = rep.residual_l1;
  doc["total_mass"] = rep.total_mass;
  doc["verified"] = rep.verified;
  doc["wall_ms"] = rep.wall_ms;
  return doc.dump(2);
}

}  // namespace carnot
