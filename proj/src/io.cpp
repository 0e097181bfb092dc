// Copyright 2026 The capra-l0 Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <capra/io.hpp>

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>

namespace capra {

namespace {

double parse_number(const std::string& s, const char* what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ArgumentError(std::string(what) + ": cannot parse '" + s + "'");
  }
  if (used != s.size()) throw ArgumentError(std::string(what) + ": trailing characters in '" + s + "'");
  return v;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\n");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t\n") - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(trim(item));
  return out;
}

LpExponent parse_exponent(const std::string& s) {
  if (s == "inf" || s == "infinity") return LpExponent::infinity();
  const auto slash = s.find('/');
  if (slash == std::string::npos) return LpExponent::finite(parse_number(s, "exponent"));
  const double num = parse_number(s.substr(0, slash), "exponent");
  const double den = parse_number(s.substr(slash + 1), "exponent");
  if (den == 0.0) throw ArgumentError("exponent: zero denominator");
  return LpExponent::finite(num / den);
}

}  // namespace

SourceNorm skew_norm() {
  CustomNorm c;
  c.name = "skew";
  c.eval = [](const Vector& x) {
    if (x.size() < 2) return std::abs(x[0]);
    return std::abs(x[0] - x[1]) + x.tail(x.size() - 1).cwiseAbs().sum();
  };
  return SourceNorm::custom(std::move(c));
}

SourceNorm parse_source(const std::string& spec) {
  const std::string s = trim(spec);
  if (s == "l1") return SourceNorm::lp(1.0);
  if (s == "l2") return SourceNorm::lp(2.0);
  if (s == "linf") return SourceNorm::linf();
  if (s == "custom:skew") return skew_norm();
  if (s.rfind("lp:", 0) == 0) return SourceNorm::lp(parse_exponent(s.substr(3)));
  throw ArgumentError("unknown source norm '" + spec + "'");
}

PhiFunction parse_phi(const std::string& spec, int d) {
  const std::string s = trim(spec);
  if (s == "id") return PhiFunction::identity(d);
  if (s == "sq") return PhiFunction::squares(d);
  if (s == "zero") return PhiFunction::zero(d);
  if (s.rfind("table:", 0) == 0) {
    const Vector v = parse_vector(s.substr(6));
    if (v.size() != d + 1) throw ArgumentError("phi table needs d + 1 values");
    return PhiFunction(std::vector<double>(v.data(), v.data() + v.size()));
  }
  throw ArgumentError("unknown phi '" + spec + "'");
}

Vector parse_vector(const std::string& text) {
  const std::vector<std::string> parts = split(trim(text), ',');
  if (parts.empty() || (parts.size() == 1 && parts[0].empty())) throw ArgumentError("empty vector");
  Vector v(static_cast<Eigen::Index>(parts.size()));
  for (std::size_t i = 0; i < parts.size(); ++i) v[static_cast<Eigen::Index>(i)] = parse_number(parts[i], "vector");
  require_finite(v, "vector");
  return v;
}

namespace {

Vector json_vector(const nlohmann::json& j, const char* what) {
  if (!j.is_array() || j.empty()) throw ArgumentError(std::string(what) + ": expected a nonempty array");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw ArgumentError(std::string(what) + ": expected numbers");
    v[static_cast<Eigen::Index>(i)] = j[i].get<double>();
  }
  return v;
}

FeasibleSet json_set(const nlohmann::json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "finite") {
    std::vector<Vector> pts;
    for (const auto& p : j.at("points")) pts.push_back(json_vector(p, "set.points"));
    return FeasibleSet::finite(std::move(pts));
  }
  if (kind == "affine") {
    const Vector t = json_vector(j.at("t"), "set.t");
    if (t.size() != 2) throw ArgumentError("set.t must be [a, b]");
    return FeasibleSet::affine_slice(json_vector(j.at("x0"), "set.x0"), json_vector(j.at("v"), "set.v"), t[0], t[1],
                                     j.at("n").get<int>());
  }
  throw ArgumentError("unknown set kind '" + kind + "'");
}

}  // namespace

Instance parse_instance(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
    SourceNorm source = parse_source(j.at("source").get<std::string>());
    FeasibleSet set = json_set(j.at("set"));
    const auto& jp = j.at("phi");
    PhiFunction phi = jp.is_string() ? parse_phi(jp.get<std::string>(), set.dim()) : [&] {
      const Vector v = json_vector(jp, "phi");
      return PhiFunction(std::vector<double>(v.data(), v.data() + v.size()));
    }();
    if (phi.dim() != set.dim()) throw ArgumentError("phi needs d + 1 values");
    return Instance{std::move(source), std::move(phi), std::move(set)};
  } catch (const nlohmann::json::exception& e) {
    throw ArgumentError(std::string("instance: ") + e.what());
  }
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ArgumentError("cannot open instance file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_instance(ss.str());
}

}  // namespace capra
