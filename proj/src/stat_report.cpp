#include "hyperlab/stat_report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <vector>

#include <json.hpp>

namespace hyperlab::analytics {

StatReport merge(const StatReport& a, const StatReport& b) {
  if (a.mode != b.mode) throw invariant_error("merge: mode mismatch");
  StatReport r = a;
  r.x_lo = std::min(a.x_lo, b.x_lo);
  r.x_hi = std::max(a.x_hi, b.x_hi);
  r.count = a.count + b.count;
  r.weighted_sum = a.weighted_sum + b.weighted_sum;
  r.complex_sum = a.complex_sum + b.complex_sum;
  r.reference = a.reference != 0.0 ? a.reference : b.reference;
  for (const auto& [k, v] : b.metadata) {
    auto it = r.metadata.find(k);
    if (it == r.metadata.end())
      r.metadata.emplace(k, v);
    else if (it->second != v)
      throw invariant_error("merge: metadata conflict at key " + k);
  }
  finalize_ratio(r);
  return r;
}

void finalize_ratio(StatReport& r) {
  auto it = r.metadata.find("ratio_basis");
  std::string basis = it == r.metadata.end() ? "count" : it->second;
  if (basis == "complex_norm_over_count") {
    r.ratio = r.count ? std::abs(r.complex_sum) / (double)r.count : 0.0;
    return;
  }
  double num = basis == "weighted_sum" ? r.weighted_sum : (double)r.count;
  r.ratio = r.reference != 0.0 ? num / r.reference : 0.0;
}

namespace {

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string to_json(const StatReport& r) {
  nlohmann::ordered_json j;
  j["mode"] = r.mode;
  j["x_lo"] = r.x_lo;
  j["x_hi"] = r.x_hi;
  j["count"] = r.count;
  j["weighted_sum"] = r.weighted_sum;
  j["complex_sum"] = {r.complex_sum.real(), r.complex_sum.imag()};
  j["reference"] = r.reference;
  j["ratio"] = r.ratio;
  nlohmann::ordered_json meta = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.metadata) meta[k] = v;
  j["metadata"] = meta;
  return j.dump(2) + "\n";
}

StatReport from_json(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  StatReport r;
  r.mode = j.at("mode").get<std::string>();
  r.x_lo = j.at("x_lo").get<i64>();
  r.x_hi = j.at("x_hi").get<i64>();
  r.count = j.at("count").get<i64>();
  r.weighted_sum = j.at("weighted_sum").get<double>();
  auto cs = j.at("complex_sum");
  r.complex_sum = {cs.at(0).get<double>(), cs.at(1).get<double>()};
  r.reference = j.at("reference").get<double>();
  r.ratio = j.at("ratio").get<double>();
  for (const auto& [k, v] : j.at("metadata").items()) r.metadata[k] = v.get<std::string>();
  return r;
}

namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += "\"";
  return out;
}

std::vector<std::string> csv_split(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

namespace {

// The metadata column packs key=value pairs with ';' separators, so those two
// characters (and the escape itself) are percent-encoded inside keys/values.
std::string meta_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == ';' || c == '=' || c == '%') {
      char buf[4];
      std::snprintf(buf, sizeof buf, "%%%02X", (unsigned char)c);
      out += buf;
    } else {
      out += c;
    }
  }
  return out;
}

std::string meta_unescape(const std::string& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '%' && i + 2 < s.size()) {
      out += (char)std::stoi(s.substr(i + 1, 2), nullptr, 16);
      i += 2;
    } else {
      out += s[i];
    }
  }
  return out;
}

}  // namespace

std::string to_csv(const StatReport& r) {
  std::ostringstream out;
  out << "mode,x_lo,x_hi,count,weighted_sum,complex_re,complex_im,reference,ratio,metadata\n";
  std::string meta;
  for (const auto& [k, v] : r.metadata) {
    if (!meta.empty()) meta += ";";
    meta += meta_escape(k) + "=" + meta_escape(v);
  }
  out << csv_escape(r.mode) << "," << r.x_lo << "," << r.x_hi << "," << r.count << ","
      << fmt_double(r.weighted_sum) << "," << fmt_double(r.complex_sum.real()) << ","
      << fmt_double(r.complex_sum.imag()) << "," << fmt_double(r.reference) << ","
      << fmt_double(r.ratio) << "," << csv_escape(meta) << "\n";
  return out.str();
}

StatReport from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string header, row;
  if (!std::getline(in, header) || !std::getline(in, row))
    throw std::invalid_argument("from_csv: need header and one row");
  auto f = csv_split(row);
  if (f.size() != 10) throw std::invalid_argument("from_csv: bad column count");
  StatReport r;
  r.mode = f[0];
  r.x_lo = std::stoll(f[1]);
  r.x_hi = std::stoll(f[2]);
  r.count = std::stoll(f[3]);
  r.weighted_sum = std::stod(f[4]);
  r.complex_sum = {std::stod(f[5]), std::stod(f[6])};
  r.reference = std::stod(f[7]);
  r.ratio = std::stod(f[8]);
  std::istringstream meta(f[9]);
  std::string kv;
  while (std::getline(meta, kv, ';')) {
    auto eq = kv.find('=');
    if (eq != std::string::npos)
      r.metadata[meta_unescape(kv.substr(0, eq))] = meta_unescape(kv.substr(eq + 1));
  }
  return r;
}

std::string to_table(const StatReport& r) {
  std::ostringstream out;
  out << "mode:           " << r.mode << "\n";
  out << "x range:        [" << r.x_lo << ", " << r.x_hi << "]\n";
  out << "count:          " << r.count << "\n";
  out << "weighted sum:   " << fmt_double(r.weighted_sum) << "\n";
  out << "complex sum:    " << fmt_double(r.complex_sum.real()) << " + "
      << fmt_double(r.complex_sum.imag()) << "i\n";
  out << "reference:      " << fmt_double(r.reference) << "\n";
  out << "ratio:          " << fmt_double(r.ratio) << "\n";
  for (const auto& [k, v] : r.metadata)
    if (k != "ratio_basis") out << "  " << k << ": " << v << "\n";
  return out.str();
}

}  // namespace hyperlab::analytics
