#include "mdlq/design_io.hpp"

#include <fstream>
#include <sstream>

#include "mdlq/error.hpp"

namespace mdlq {
namespace {

using nlohmann::json;

json vec_json(const IVec& v) {
  json a = json::array();
  for (int i = 0; i < v.dim; ++i) a.push_back(v[i]);
  return a;
}

IVec vec_from(const json& a, int dim) {
  if (!a.is_array() || static_cast<int>(a.size()) != dim)
    throw Error(ErrorCode::InvalidArgument, "expected an integer vector of length " + std::to_string(dim));
  IVec v(dim);
  for (int i = 0; i < dim; ++i) v[i] = a.at(static_cast<std::size_t>(i)).get<std::int64_t>();
  return v;
}

}  // namespace

json design_to_json(const Labeling& lab) {
  const auto& sub = lab.sublattice();
  json j;
  j["schema"] = kSchemaVersion;
  j["lattice"] = std::string(to_string(lab.lattice().name()));
  j["params"] = sub.params();
  j["index"] = sub.index();
  j["group_order"] = lab.group_order();
  json om = json::array();
  for (const auto& m : lab.orbit_matching())
    om.push_back({{"point", vec_json(m.point)}, {"edge_class", vec_json(m.edge_class)}, {"cost_units", m.cost_units}});
  j["orbit_matching"] = om;
  json entries = json::array();
  for (const auto& en : lab.entries())
    entries.push_back({{"point", vec_json(en.point)}, {"edge", {vec_json(en.edge.a), vec_json(en.edge.b)}}});
  j["entries"] = entries;
  j["cost_summary"] = {{"sum_ds_units", lab.sum_ds_units()},
                       {"unit", ds_unit_scale(lab.lattice())},
                       {"sum_ds", lab.sum_ds()},
                       {"mean_excess", lab.mean_excess()}};
  return j;
}

Labeling design_from_json(const json& j) {
  try {
    if (j.at("schema").get<int>() != kSchemaVersion)
      throw Error(ErrorCode::InvalidArgument, "unsupported design schema " + j.at("schema").dump());
    const Lattice lat = Lattice::make(parse_lattice(j.at("lattice").get<std::string>()));
    const auto sub = SimilarSublattice::build(lat, j.at("params").get<Params>());
    if (j.contains("index") && j.at("index").get<std::int64_t>() != sub.index())
      throw Error(ErrorCode::InvalidArgument, "index field does not match params");
    const int L = lat.dim();
    std::vector<LabelEntry> entries;
    for (const auto& e : j.at("entries")) {
      const auto& edge = e.at("edge");
      if (!edge.is_array() || edge.size() != 2) throw Error(ErrorCode::InvalidArgument, "edge needs two endpoints");
      entries.push_back({vec_from(e.at("point"), L), UndirectedEdge::make(vec_from(edge[0], L), vec_from(edge[1], L))});
    }
    std::vector<OrbitMatch> matching;
    if (j.contains("orbit_matching"))
      for (const auto& m : j.at("orbit_matching"))
        matching.push_back({vec_from(m.at("point"), L), vec_from(m.at("edge_class"), L),
                            m.value("cost_units", std::int64_t{0})});
    return Labeling::from_entries(sub, entries, std::move(matching), j.value("group_order", 0));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("malformed design file: ") + e.what());
  }
}

std::string dump_json(const json& j) { return j.dump(2) + "\n"; }

Labeling load_design_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, path + ": " + e.what());
  }
  return design_from_json(j);
}

void save_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + path);
  out << text;
}

}  // namespace mdlq
