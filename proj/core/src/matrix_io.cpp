#include "mink/matrix_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace mink {

namespace {

using json = nlohmann::json;

[[noreturn]] void bad(const std::string& why) { throw Error(ErrorCode::Parse, why); }

Index dimension(const json& doc, const char* key) {
  if (!doc.contains(key)) bad(std::string("missing \"") + key + "\"");
  const json& v = doc.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 1) {
    bad(std::string("\"") + key + "\" must be a positive integer");
  }
  return static_cast<Index>(v.get<long long>());
}

double component(const json& v, std::size_t k) {
  if (!v.is_number()) bad("entry " + std::to_string(k) + " has a non-numeric component");
  const double x = v.get<double>();
  if (!std::isfinite(x)) bad("entry " + std::to_string(k) + " is not finite");
  return x;
}

}  // namespace

Matrix parse_matrix_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    bad(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) bad("top level must be an object");
  const Index rows = dimension(doc, "rows");
  const Index cols = dimension(doc, "cols");
  if (!doc.contains("data") || !doc.at("data").is_array()) bad("\"data\" must be an array");
  const json& data = doc.at("data");
  if (data.size() != static_cast<std::size_t>(rows * cols)) {
    bad("\"data\" has " + std::to_string(data.size()) + " entries, expected " +
        std::to_string(rows * cols));
  }
  Matrix a(rows, cols);
  for (std::size_t k = 0; k < data.size(); ++k) {
    const json& e = data[k];
    if (!e.is_array() || e.size() != 2) bad("entry " + std::to_string(k) + " is not [re, im]");
    const auto i = static_cast<Index>(k) / cols;
    const auto j = static_cast<Index>(k) % cols;
    a(i, j) = Scalar(component(e[0], k), component(e[1], k));
  }
  return a;
}

std::string to_matrix_json(const Matrix& a) {
  if (!a.allFinite()) throw Error(ErrorCode::NonFinite, "cannot serialize non-finite matrix");
  json data = json::array();
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      data.push_back(json::array({a(i, j).real(), a(i, j).imag()}));
    }
  }
  json doc = {{"rows", a.rows()}, {"cols", a.cols()}, {"data", std::move(data)}};
  return doc.dump() + "\n";
}

Matrix read_matrix_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::Io, "read failed for " + path.string());
  return parse_matrix_json(buf.str());
}

void write_matrix_file(const std::filesystem::path& path, const Matrix& a) {
  const std::string text = to_matrix_json(a);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::Io, "cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw Error(ErrorCode::Io, "write failed for " + path.string());
}

}  // namespace mink
