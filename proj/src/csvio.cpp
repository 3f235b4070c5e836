#include "bbm/csvio.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace bbm {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_csv(const std::filesystem::path& path, const CsvTable& table) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  auto write_row = [&out](const std::vector<std::string>& row) {
    for (size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << row[i];
    }
    out << '\n';
  };
  write_row(table.header);
  for (const auto& row : table.rows) write_row(row);
  if (!out) throw IoError("write failed: " + path.string());
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open for reading: " + path.string());
  CsvTable table;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) fields.push_back(cell);
    if (line.back() == ',') fields.emplace_back();
    if (first) {
      table.header = std::move(fields);
      first = false;
    } else {
      table.rows.push_back(std::move(fields));
    }
  }
  if (first) throw IoError("empty CSV: " + path.string());
  return table;
}

void write_schema(
    const std::filesystem::path& path,
    const std::vector<std::pair<std::string, std::string>>& columns) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  for (const auto& [name, desc] : columns) out << name << ": " << desc << '\n';
}

void write_text_file(const std::filesystem::path& path,
                     const std::string& content) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  out << content;
  if (!out) throw IoError("write failed: " + path.string());
}

void write_wave(const std::filesystem::path& dir, const std::string& stem,
                const TravellingWave& wave, BcKind bc) {
  const UniformMesh& mesh = wave.eta.space->mesh();

  CsvTable meta;
  meta.header = {"key", "value"};
  auto put = [&meta](const std::string& k, const std::string& v) {
    meta.rows.push_back({k, v});
  };
  put("degree", std::to_string(wave.eta.space->degree()));
  put("bc", to_string(bc));
  put("a", format_double(mesh.a));
  put("b", format_double(mesh.b));
  put("n_cells", std::to_string(mesh.n_cells));
  put("c_s", format_double(wave.c_s));
  put("amplitude", format_double(wave.amplitude));
  put("peak_x", format_double(wave.peak_x));
  put("iterations", std::to_string(wave.iterations));
  write_csv(dir / (stem + ".meta.csv"), meta);

  CsvTable coeffs;
  coeffs.header = {"field", "index", "value"};
  auto dump = [&coeffs](const std::string& name, const Coeffs& c) {
    for (int i = 0; i < c.values.size(); ++i)
      coeffs.rows.push_back(
          {name, std::to_string(i), format_double(c.values[i])});
  };
  dump("eta", wave.eta);
  dump("u", wave.u);
  dump("eta_x", wave.eta_x);
  dump("u_x", wave.u_x);
  write_csv(dir / (stem + ".coeffs.csv"), coeffs);
}

TravellingWave read_wave(const std::filesystem::path& dir,
                         const std::string& stem, BcKind* bc_out) {
  const CsvTable meta = read_csv(dir / (stem + ".meta.csv"));
  std::map<std::string, std::string> kv;
  for (const auto& row : meta.rows) {
    if (row.size() != 2) throw IoError("malformed wave metadata");
    kv[row[0]] = row[1];
  }
  auto need = [&kv](const std::string& k) {
    auto it = kv.find(k);
    if (it == kv.end()) throw IoError("wave metadata missing key: " + k);
    return it->second;
  };

  const int degree = std::stoi(need("degree"));
  const BcKind bc =
      need("bc") == "periodic" ? BcKind::Periodic : BcKind::Reflective;
  const double a = std::stod(need("a"));
  const double b = std::stod(need("b"));
  const int n_cells = std::stoi(need("n_cells"));
  if (bc_out) *bc_out = bc;

  SpacePtr sp_h, sp_u;
  if (bc == BcKind::Periodic) {
    sp_h = build_space(a, b, n_cells, degree, BoundaryVariant::Periodic);
    sp_u = sp_h;
  } else {
    sp_h = build_space(a, b, n_cells, degree, BoundaryVariant::Free);
    sp_u = build_space(a, b, n_cells, degree, BoundaryVariant::ZeroEndpoint);
  }

  TravellingWave wave;
  wave.c_s = std::stod(need("c_s"));
  wave.amplitude = std::stod(need("amplitude"));
  wave.peak_x = std::stod(need("peak_x"));
  wave.iterations = std::stoi(need("iterations"));
  wave.eta = Coeffs(sp_h);
  wave.u = Coeffs(sp_u);
  wave.eta_x = Coeffs(sp_u);
  wave.u_x = Coeffs(sp_h);

  const CsvTable coeffs = read_csv(dir / (stem + ".coeffs.csv"));
  for (const auto& row : coeffs.rows) {
    if (row.size() != 3) throw IoError("malformed wave coefficients");
    Coeffs* target = nullptr;
    if (row[0] == "eta") target = &wave.eta;
    else if (row[0] == "u") target = &wave.u;
    else if (row[0] == "eta_x") target = &wave.eta_x;
    else if (row[0] == "u_x") target = &wave.u_x;
    else throw IoError("unknown wave field: " + row[0]);
    const int i = std::stoi(row[1]);
    if (i < 0 || i >= target->values.size())
      throw IoError("wave coefficient index out of range");
    target->values[i] = std::stod(row[2]);
  }
  return wave;
}

}  // namespace bbm
