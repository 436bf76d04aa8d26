#include "qslice/json_io.hpp"

#include "qslice/errors.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace qslice {

namespace {

Error parse_error(const std::string& what) { return Error(Errc::ParseError, what); }

std::vector<int> int_list(const Json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_array()) throw parse_error(std::string("missing array '") + key + "'");
  try {
    return j.at(key).get<std::vector<int>>();
  } catch (const Json::exception& e) {
    throw parse_error(std::string("'") + key + "': " + e.what());
  }
}

std::vector<Matrix> matrix_list(const Json& j, const char* key, const std::vector<std::pair<std::size_t, std::size_t>>& shapes) {
  if (!j.contains(key) || !j.at(key).is_array()) throw parse_error(std::string("missing array '") + key + "'");
  const Json& arr = j.at(key);
  if (arr.size() != shapes.size())
    throw Error(Errc::ShapeMismatch, std::string("'") + key + "' needs " + std::to_string(shapes.size()) + " matrices");
  std::vector<Matrix> out;
  for (std::size_t k = 0; k < shapes.size(); ++k) out.push_back(matrix_from_json(arr[k], shapes[k].first, shapes[k].second));
  return out;
}

Json slot_label(const Slot& s, int level) {
  if (s.is_v) return Json::array({"V", level});
  return Json::array({"D", s.j, s.k});
}

}  // namespace

Json to_json(const Rational& q) { return q.to_string(); }

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  throw parse_error("rational must be a string or an integer");
}

Json to_json(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const Json& j) {
  if (!j.is_array()) throw parse_error("matrix must be an array of rows");
  const std::size_t rows = j.size();
  const std::size_t cols = rows ? j[0].size() : 0;
  return matrix_from_json(j, rows, cols);
}

Matrix matrix_from_json(const Json& j, std::size_t rows, std::size_t cols) {
  if (!j.is_array()) throw parse_error("matrix must be an array of rows");
  if (j.size() != rows) throw Error(Errc::ShapeMismatch, "expected " + std::to_string(rows) + " rows");
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const Json& row = j[r];
    if (!row.is_array() || row.size() != cols)
      throw Error(Errc::ShapeMismatch, "row " + std::to_string(r) + " needs " + std::to_string(cols) + " entries");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rational_from_json(row[c]);
  }
  return m;
}

Json to_json(const Partition& p) { return p.parts(); }

Json to_json(const DimData& dd) { return Json{{"n", dd.n}, {"d", dd.d}, {"v", dd.v}}; }

DimData dims_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("n")) throw parse_error("dimension object needs 'n'");
  DimData dd;
  try {
    dd.n = j.at("n").get<int>();
  } catch (const Json::exception& e) {
    throw parse_error(e.what());
  }
  dd.d = int_list(j, "d");
  dd.v = int_list(j, "v");
  dd.validate();
  return dd;
}

Json to_json(const ADHMData& z) {
  Json j = to_json(z.dims);
  auto list = [](const std::vector<Matrix>& ms) {
    Json arr = Json::array();
    for (const auto& m : ms) arr.push_back(to_json(m));
    return arr;
  };
  j["A"] = list(z.A);
  j["B"] = list(z.B);
  j["gamma"] = list(z.gamma);
  j["delta"] = list(z.delta);
  return j;
}

ADHMData adhm_from_json(const Json& j) {
  const DimData dd = dims_from_json(j);
  if (!dd.nonnegative()) throw Error(Errc::NegativeEntry, "dimensions must be nonnegative");
  const int n = dd.n;
  auto v = [&](int i) { return static_cast<std::size_t>(dd.v_at(i)); };
  auto d = [&](int i) { return static_cast<std::size_t>(dd.d_at(i)); };
  std::vector<std::pair<std::size_t, std::size_t>> a_shapes, b_shapes, g_shapes, dl_shapes;
  for (int i = 1; i <= n - 2; ++i) {
    a_shapes.emplace_back(v(i + 1), v(i));
    b_shapes.emplace_back(v(i), v(i + 1));
  }
  for (int i = 1; i <= n - 1; ++i) {
    g_shapes.emplace_back(v(i), d(i));
    dl_shapes.emplace_back(d(i), v(i));
  }
  ADHMData z = ADHMData::zero(dd);
  z.A = matrix_list(j, "A", a_shapes);
  z.B = matrix_list(j, "B", b_shapes);
  z.gamma = matrix_list(j, "gamma", g_shapes);
  z.delta = matrix_list(j, "delta", dl_shapes);
  z.validate();
  return z;
}

Json to_json(const TildeData& t) {
  Json j = to_json(t.layout.dims());
  Json layout = Json::array();
  for (int level = 0; level <= t.layout.n() - 1; ++level) {
    Json slots = Json::array();
    for (const Slot& s : t.layout.slots(level)) slots.push_back(slot_label(s, level));
    layout.push_back(std::move(slots));
  }
  j["layout"] = std::move(layout);
  Json a = Json::array(), b = Json::array();
  for (const auto& m : t.Atil) a.push_back(to_json(m));
  for (const auto& m : t.Btil) b.push_back(to_json(m));
  j["Atil"] = std::move(a);
  j["Btil"] = std::move(b);
  return j;
}

TildeData tilde_from_json(const Json& j) {
  const DimData dd = dims_from_json(j);
  TildeData t = TildeData::zero(TildeLayout(dd));
  const TildeLayout& lay = t.layout;
  if (j.contains("layout")) {
    Json expected = Json::array();
    for (int level = 0; level <= lay.n() - 1; ++level) {
      Json slots = Json::array();
      for (const Slot& s : lay.slots(level)) slots.push_back(slot_label(s, level));
      expected.push_back(std::move(slots));
    }
    if (j.at("layout") != expected) throw Error(Errc::ShapeMismatch, "layout labels do not match the dimensions");
  }
  std::vector<std::pair<std::size_t, std::size_t>> a_shapes, b_shapes;
  for (int i = 0; i <= lay.n() - 2; ++i) {
    a_shapes.emplace_back(lay.size(i + 1), lay.size(i));
    b_shapes.emplace_back(lay.size(i), lay.size(i + 1));
  }
  t.Atil = matrix_list(j, "Atil", a_shapes);
  t.Btil = matrix_list(j, "Btil", b_shapes);
  return t;
}

Json to_json(const CoeffTable& table) {
  auto entries = [](const std::map<BlockIndex, Rational>& m, int shift) {
    Json arr = Json::array();
    for (const auto& [k, value] : m)
      arr.push_back(Json{{"i", k[0]}, {"j", k[1]}, {"h", k[2]}, {"jp", k[3]}, {"hp", k[4]},
                         {"r", k[1] + k[4] - k[2] + shift}, {"value", to_json(value)}});
    return arr;
  };
  return Json{{"n", table.n}, {"lambda", entries(table.lambda, 0)}, {"mu", entries(table.mu, 1)}};
}

Json to_json(const FlagPair& p) {
  Json bases = Json::array();
  for (const auto& b : p.flag.bases) bases.push_back(to_json(b));
  return Json{{"N", p.flag.N}, {"a", p.flag.a}, {"u", to_json(p.u)}, {"flag", std::move(bases)}};
}

FlagPair flag_pair_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("u") || !j.contains("flag")) throw parse_error("flag pair needs 'u' and 'flag'");
  FlagPair p;
  p.u = matrix_from_json(j.at("u"));
  if (!p.u.is_square()) throw Error(Errc::InvalidFlag, "u must be square");
  p.flag.N = static_cast<int>(p.u.rows());
  const Json& bases = j.at("flag");
  if (!bases.is_array()) throw parse_error("'flag' must be an array of bases");
  int prev = 0;
  for (const Json& b : bases) {
    Matrix m = matrix_from_json(b);
    if (b.size() == 0) m = Matrix(static_cast<std::size_t>(p.flag.N), 0);
    p.flag.a.push_back(static_cast<int>(m.cols()) - prev);
    prev = static_cast<int>(m.cols());
    p.flag.bases.push_back(std::move(m));
  }
  if (j.contains("a") && int_list(j, "a") != p.flag.a)
    throw Error(Errc::InvalidFlag, "'a' does not match the basis sizes");
  p.validate();
  return p;
}

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string signature_hash(const ADHMData& z) {
  Json arr = Json::array();
  for (const auto& m : invariant_signature(z)) arr.push_back(to_json(m));
  return fnv1a_hex(arr.dump());
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw parse_error(path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw Error(Errc::InvalidArgument, "cannot write " + path);
  out << j.dump(2) << '\n';
}

}  // namespace qslice
