#include "ifsaddr/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <nlohmann/json.hpp>
#include <optional>
#include <sstream>

#include "ifsaddr/error.hpp"

namespace ifsaddr {

namespace {

using nlohmann::json;

// A JSON number or numeric string, with its exact value when it has one.
struct Number {
  double value = 0.0;
  std::optional<Rational> exact;
};

Number read_number(const json& j, const std::string& what) {
  if (j.is_number()) {
    const double v = j.get<double>();
    return {v, decimal_rational(v)};
  }
  if (j.is_string()) {
    const Rational q = parse_rational(j.get<std::string>());
    return {q.get_d(), q};
  }
  throw Error(ErrorCode::InvalidArgument, what + " must be a number");
}

}  // namespace

IfsFile parse_ifs_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("malformed IFS JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("lambda") || !doc.contains("points"))
    throw Error(ErrorCode::InvalidArgument, "IFS JSON needs \"lambda\" and \"points\"");
  const Number lambda = read_number(doc["lambda"], "lambda");
  const json& pts = doc["points"];
  if (!pts.is_array()) throw Error(ErrorCode::InvalidArgument, "points must be an array");

  std::vector<Point> points;
  std::vector<RationalPoint> exact;
  bool all_exact = lambda.exact.has_value();
  for (const auto& p : pts) {
    if (!p.is_array()) throw Error(ErrorCode::InvalidArgument, "each point must be an array of numbers");
    Point x;
    RationalPoint q;
    for (const auto& c : p) {
      const Number n = read_number(c, "coordinate");
      x.push_back(n.value);
      if (n.exact) q.push_back(*n.exact);
      else all_exact = false;
    }
    points.push_back(std::move(x));
    exact.push_back(std::move(q));
  }

  std::vector<double> probs;
  if (doc.contains("probs")) {
    const json& pr = doc["probs"];
    if (!pr.is_array()) throw Error(ErrorCode::InvalidArgument, "probs must be an array");
    double sum = 0.0;
    for (const auto& v : pr) {
      probs.push_back(read_number(v, "probability").value);
      if (probs.back() < 0.0) throw Error(ErrorCode::BadProbabilityVector, "probabilities must be non-negative");
      sum += probs.back();
    }
    if (probs.size() != points.size())
      throw Error(ErrorCode::BadProbabilityVector, "probs must have one entry per point");
    if (std::fabs(sum - 1.0) > 1e-9) throw Error(ErrorCode::BadProbabilityVector, "probs must sum to 1");
  }

  if (all_exact) return IfsFile{IfsSystem(*lambda.exact, std::move(exact)), std::move(probs)};
  return IfsFile{IfsSystem(lambda.value, std::move(points)), std::move(probs)};
}

IfsFile load_ifs_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_ifs_json(buf.str());
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

CsvWriter::CsvWriter(std::ostream& out, const std::vector<std::string>& header) : out_(out), columns_(header.size()) {
  row(header);
}

void CsvWriter::row(const std::vector<std::string>& fields) {
  if (fields.size() != columns_) throw Error(ErrorCode::InvalidArgument, "CSV row has the wrong number of fields");
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out_ << ',';
    out_ << fields[i];
  }
  out_ << '\n';
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << content)) throw Error(ErrorCode::IoError, "cannot write " + path);
}

}  // namespace ifsaddr
