#include "l0pen/instance_io.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace l0pen {

using nlohmann::json;

namespace {

json matrix_to_json(const Matrix& m) {
  json arr = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) arr.push_back(m(i, j));
  }
  return arr;
}

json vector_to_json(const Vector& v) {
  json arr = json::array();
  for (Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& path) {
  for (const auto& [key, _] : obj.items()) {
    if (!allowed.contains(key)) {
      throw InstanceFormatError(path + key, "unknown field");
    }
  }
}

const json& field(const json& obj, const std::string& key, const std::string& path) {
  const auto it = obj.find(key);
  if (it == obj.end()) throw InstanceFormatError(path + key, "missing field");
  return *it;
}

double number(const json& obj, const std::string& key, const std::string& path) {
  const json& v = field(obj, key, path);
  if (!v.is_number()) throw InstanceFormatError(path + key, "expected a number");
  return v.get<double>();
}

Index positive_int(const json& obj, const std::string& key, const std::string& path) {
  const json& v = field(obj, key, path);
  if (!v.is_number_integer() || v.get<long long>() <= 0) {
    throw InstanceFormatError(path + key, "expected a positive integer");
  }
  return static_cast<Index>(v.get<long long>());
}

Matrix read_matrix(const json& obj, const std::string& key, Index rows, Index cols,
                   const std::string& path) {
  const json& v = field(obj, key, path);
  const std::string where = path + key;
  if (!v.is_array()) throw InstanceFormatError(where, "expected an array");
  if (static_cast<Index>(v.size()) != rows * cols) {
    throw InstanceFormatError(where, "expected " + std::to_string(rows * cols) +
                                         " entries for shape " + std::to_string(rows) + "x" +
                                         std::to_string(cols) + ", got " +
                                         std::to_string(v.size()));
  }
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) {
      const json& e = v[static_cast<std::size_t>(i * cols + j)];
      if (!e.is_number()) {
        throw InstanceFormatError(where + "[" + std::to_string(i * cols + j) + "]",
                                  "expected a number");
      }
      m(i, j) = e.get<double>();
    }
  }
  return m;
}

std::string position_of(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

json to_json(const InstanceFile& file) {
  json j;
  j["format_version"] = kInstanceFormatVersion;
  j["kind"] = file.kind();
  if (file.is_portfolio()) {
    const auto& p = file.portfolio();
    j["shapes"] = {{"n", p.dim()}};
    j["rho"] = p.rho;
    j["beta"] = p.beta;
    j["matrices"] = {{"Q", matrix_to_json(p.Q)}, {"mu", vector_to_json(p.mu)}};
  } else {
    const auto& d = file.dictionary();
    j["shapes"] = {{"n", d.n}, {"l", d.l}, {"m", d.m}};
    j["rho"] = d.rho;
    j["matrices"] = {{"Z", matrix_to_json(d.Z)}};
    if (file.start) {
      j["matrices"]["C0"] = matrix_to_json(file.start->first);
      j["matrices"]["D0"] = matrix_to_json(file.start->second);
    }
  }
  if (file.rng) j["rng"] = {{"name", file.rng->name}, {"seed", file.rng->seed}};
  return j;
}

InstanceFile from_json(const json& j) {
  if (!j.is_object()) throw InstanceFormatError("<root>", "expected a JSON object");
  reject_unknown(j, {"format_version", "kind", "shapes", "rho", "beta", "matrices", "rng"}, "");

  const json& version = field(j, "format_version", "");
  if (!version.is_number_integer() || version.get<int>() != kInstanceFormatVersion) {
    throw InstanceFormatError("format_version", "unsupported version");
  }
  const json& kind = field(j, "kind", "");
  if (!kind.is_string()) throw InstanceFormatError("kind", "expected a string");
  const json& shapes = field(j, "shapes", "");
  const json& matrices = field(j, "matrices", "");
  if (!shapes.is_object()) throw InstanceFormatError("shapes", "expected an object");
  if (!matrices.is_object()) throw InstanceFormatError("matrices", "expected an object");

  InstanceFile file;
  const double rho = number(j, "rho", "");
  if (kind == "portfolio") {
    reject_unknown(shapes, {"n"}, "shapes.");
    reject_unknown(matrices, {"Q", "mu"}, "matrices.");
    const Index n = positive_int(shapes, "n", "shapes.");
    PortfolioInstance p;
    p.rho = rho;
    p.beta = number(j, "beta", "");
    p.Q = read_matrix(matrices, "Q", n, n, "matrices.");
    p.mu = read_matrix(matrices, "mu", n, 1, "matrices.");
    file.problem = std::move(p);
  } else if (kind == "dictionary") {
    if (j.contains("beta")) throw InstanceFormatError("beta", "not a dictionary field");
    reject_unknown(shapes, {"n", "l", "m"}, "shapes.");
    reject_unknown(matrices, {"Z", "C0", "D0"}, "matrices.");
    DictionaryInstance d;
    d.n = positive_int(shapes, "n", "shapes.");
    d.l = positive_int(shapes, "l", "shapes.");
    d.m = positive_int(shapes, "m", "shapes.");
    d.rho = rho;
    d.Z = read_matrix(matrices, "Z", d.n, d.m, "matrices.");
    const bool has_c = matrices.contains("C0");
    const bool has_d = matrices.contains("D0");
    if (has_c != has_d) throw InstanceFormatError("matrices", "C0 and D0 must appear together");
    if (has_c) {
      file.start = std::make_pair(read_matrix(matrices, "C0", d.l, d.m, "matrices."),
                                  read_matrix(matrices, "D0", d.l, d.n, "matrices."));
    }
    file.problem = std::move(d);
  } else {
    throw InstanceFormatError("kind", "expected \"portfolio\" or \"dictionary\"");
  }

  if (j.contains("rng")) {
    const json& r = j["rng"];
    if (!r.is_object()) throw InstanceFormatError("rng", "expected an object");
    reject_unknown(r, {"name", "seed"}, "rng.");
    const json& name = field(r, "name", "rng.");
    const json& seed = field(r, "seed", "rng.");
    if (!name.is_string()) throw InstanceFormatError("rng.name", "expected a string");
    if (!seed.is_number_unsigned()) throw InstanceFormatError("rng.seed", "expected an unsigned integer");
    file.rng = RngInfo{name.get<std::string>(), seed.get<std::uint64_t>()};
  }

  try {
    if (file.is_portfolio()) {
      file.portfolio().validate();
    } else {
      file.dictionary().validate();
    }
  } catch (const Error& e) {
    throw InstanceFormatError("matrices", e.what());
  }
  return file;
}

}  // namespace

std::string instance_to_string(const InstanceFile& file) { return to_json(file).dump(); }

InstanceFile instance_from_string(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InstanceFormatError(position_of(text, e.byte > 0 ? e.byte - 1 : 0), "malformed JSON");
  }
  return from_json(j);
}

void save_instance(const std::filesystem::path& path, const InstanceFile& file) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  out << instance_to_string(file) << '\n';
  if (!out) throw Error("failed writing '" + path.string() + "'");
}

InstanceFile load_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return instance_from_string(buffer.str());
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream out;
  out << std::hex;
  out.width(16);
  out.fill('0');
  out << h;
  return out.str();
}

std::string instance_hash(const InstanceFile& file) { return fnv1a_hex(instance_to_string(file)); }

SpoProblem make_problem(const InstanceFile& file) {
  return file.is_portfolio() ? portfolio_problem(file.portfolio())
                             : dictionary_problem(file.dictionary());
}

Vector default_start(const InstanceFile& file) {
  if (file.is_portfolio()) return portfolio_dense_start(file.portfolio());
  const auto& d = file.dictionary();
  if (file.start) return dictionary_pack(file.start->first, file.start->second);
  const Matrix D = Matrix::Constant(d.l, d.n, 1.0 / std::sqrt(static_cast<double>(d.n)));
  return dictionary_pack(Matrix::Zero(d.l, d.m), D);
}

}  // namespace l0pen
