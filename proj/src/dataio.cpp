#include "parscale/dataio.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <map>
#include <numeric>
#include <sstream>

#include "parscale/amdahl.hpp"

namespace parscale {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

// "Rmax [TFlop/s]" -> "rmax"
std::string normalize_header(const std::string& raw) {
  std::string s = trim(raw);
  const std::size_t bracket = s.find('[');
  if (bracket != std::string::npos) s = s.substr(0, bracket);
  return lower(trim(s));
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  fields.push_back(cur);
  return fields;
}

bool parse_double_strict(const std::string& text, double* out) {
  const std::string t = trim(text);
  if (t.empty()) return false;
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (end != t.c_str() + t.size()) return false;
  *out = v;
  return true;
}

bool parse_int_strict(const std::string& text, std::int64_t* out) {
  const std::string t = trim(text);
  if (t.empty()) return false;
  char* end = nullptr;
  const long long v = std::strtoll(t.c_str(), &end, 10);
  if (end != t.c_str() + t.size()) return false;
  *out = v;
  return true;
}

bool parse_bool_strict(const std::string& text, bool* out) {
  const std::string t = lower(trim(text));
  if (t == "1" || t == "true" || t == "yes") {
    *out = true;
    return true;
  }
  if (t == "0" || t == "false" || t == "no") {
    *out = false;
    return true;
  }
  return false;
}

std::string fmt(double v, int precision = 12) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", precision, v);
  return buf;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += '"';
  return out;
}

struct ColumnIndex {
  int rank = -1, name = -1, cores = -1, rmax = -1, rpeak = -1;
  int hpcg = -1, year = -1, accelerated = -1;
};

ColumnIndex map_header(const std::vector<std::string>& headers) {
  static const std::map<std::string, int ColumnIndex::*> aliases = {
      {"rank", &ColumnIndex::rank},
      {"name", &ColumnIndex::name},
      {"system", &ColumnIndex::name},
      {"machine", &ColumnIndex::name},
      {"cores", &ColumnIndex::cores},
      {"total cores", &ColumnIndex::cores},
      {"rmax", &ColumnIndex::rmax},
      {"rpeak", &ColumnIndex::rpeak},
      {"hpcg", &ColumnIndex::hpcg},
      {"year", &ColumnIndex::year},
      {"accelerated", &ColumnIndex::accelerated},
  };
  ColumnIndex idx;
  for (std::size_t i = 0; i < headers.size(); ++i) {
    const auto it = aliases.find(normalize_header(headers[i]));
    if (it != aliases.end() && idx.*(it->second) == -1) {
      idx.*(it->second) = static_cast<int>(i);
    }
  }
  const auto require = [&](int ColumnIndex::*member, const char* what) {
    if (idx.*member == -1) {
      throw DataError(std::string("missing mandatory column: ") + what);
    }
  };
  require(&ColumnIndex::rank, "rank");
  require(&ColumnIndex::name, "name");
  require(&ColumnIndex::cores, "cores");
  require(&ColumnIndex::rmax, "rmax");
  require(&ColumnIndex::rpeak, "rpeak");
  return idx;
}

}  // namespace

ParseReport parse_csv(std::istream& in, const CsvOptions& opts) {
  ParseReport report;
  std::string line;
  std::size_t line_no = 0;

  ColumnIndex idx;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    idx = map_header(split_csv_line(line));
    have_header = true;
    break;
  }
  if (!have_header) throw DataError("missing header row");

  const auto reject = [&](std::size_t at, std::string why) {
    report.issues.push_back(ParseIssue{at, std::move(why)});
  };

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    const std::vector<std::string> fields = split_csv_line(line);
    const auto field = [&](int i) -> const std::string& {
      static const std::string empty;
      return i >= 0 && i < static_cast<int>(fields.size()) ? fields[static_cast<std::size_t>(i)]
                                                           : empty;
    };

    MachineRecord rec;
    double rmax_units = 0.0, rpeak_units = 0.0;
    if (!parse_int_strict(field(idx.rank), &rec.rank)) {
      reject(line_no, "unparseable rank");
      continue;
    }
    rec.name = trim(field(idx.name));
    if (!parse_int_strict(field(idx.cores), &rec.cores)) {
      reject(line_no, "unparseable core count");
      continue;
    }
    if (!parse_double_strict(field(idx.rmax), &rmax_units) ||
        !parse_double_strict(field(idx.rpeak), &rpeak_units)) {
      reject(line_no, "unparseable benchmark figure");
      continue;
    }
    rec.rmax = rmax_units * opts.unit_scale;
    rec.rpeak = rpeak_units * opts.unit_scale;

    if (idx.hpcg >= 0 && !trim(field(idx.hpcg)).empty()) {
      double hpcg_units = 0.0;
      if (!parse_double_strict(field(idx.hpcg), &hpcg_units)) {
        reject(line_no, "unparseable hpcg figure");
        continue;
      }
      rec.hpcg = hpcg_units * opts.unit_scale;
    }
    if (idx.year >= 0 && !trim(field(idx.year)).empty()) {
      std::int64_t y = 0;
      if (!parse_int_strict(field(idx.year), &y)) {
        reject(line_no, "unparseable year");
        continue;
      }
      rec.year = static_cast<int>(y);
    }
    if (idx.accelerated >= 0 && !trim(field(idx.accelerated)).empty()) {
      bool b = false;
      if (!parse_bool_strict(field(idx.accelerated), &b)) {
        reject(line_no, "unparseable accelerated flag");
        continue;
      }
      rec.accelerated = b;
    }

    if (rec.rank < 1) {
      reject(line_no, "rank below 1");
      continue;
    }
    if (rec.cores < 1) {
      reject(line_no, "core count below 1");
      continue;
    }
    if (!(rec.rmax > 0.0) || !(rec.rpeak > 0.0)) {
      reject(line_no, "benchmark figures must be positive");
      continue;
    }
    if (rec.rmax > rec.rpeak) {
      reject(line_no, "inconsistent benchmark figures: rmax exceeds rpeak");
      continue;
    }
    if (rec.hpcg && *rec.hpcg > rec.rmax) {
      reject(line_no, "inconsistent benchmark figures: hpcg exceeds rmax");
      continue;
    }
    report.records.push_back(std::move(rec));
  }
  return report;
}

ParseReport parse_csv_string(const std::string& text, const CsvOptions& opts) {
  std::istringstream in(text);
  return parse_csv(in, opts);
}

ParseReport parse_csv_file(const std::string& path, const CsvOptions& opts) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  return parse_csv(in, opts);
}

std::string write_csv(const std::vector<MachineRecord>& records, const CsvOptions& opts) {
  std::string out = "rank,name,cores,rmax,rpeak,hpcg,year,accelerated\n";
  for (const auto& r : records) {
    out += std::to_string(r.rank);
    out += ',';
    out += csv_escape(r.name);
    out += ',';
    out += std::to_string(r.cores);
    out += ',';
    out += fmt(r.rmax / opts.unit_scale, 17);
    out += ',';
    out += fmt(r.rpeak / opts.unit_scale, 17);
    out += ',';
    if (r.hpcg) out += fmt(*r.hpcg / opts.unit_scale, 17);
    out += ',';
    if (r.year) out += std::to_string(*r.year);
    out += ',';
    if (r.accelerated) out += *r.accelerated ? "true" : "false";
    out += '\n';
  }
  return out;
}

DerivedMetrics derive(const MachineRecord& r) {
  if (!(r.rmax > 0.0) || !(r.rpeak > 0.0) || r.rmax > r.rpeak || r.cores < 1) {
    throw DataError("record violates its invariants");
  }
  DerivedMetrics d;
  d.e_hpl = r.rmax / r.rpeak;
  d.gain_hpl = d.e_hpl * static_cast<double>(r.cores);
  if (r.hpcg) {
    d.e_hpcg = *r.hpcg / r.rpeak;
    d.hpl_hpcg_ratio = d.e_hpl / *d.e_hpcg;
  }
  if (r.cores < 2) {
    d.alpha_note = "empirical alpha undefined for a single unit";
    return d;
  }
  const double n = static_cast<double>(r.cores);
  try {
    d.alpha_hpl = alpha_from_efficiency(d.e_hpl, n);
    d.one_minus_alpha_hpl = serial_fraction_from_efficiency(d.e_hpl, n);
  } catch (const std::invalid_argument& ex) {
    d.alpha_note = ex.what();
  }
  if (d.e_hpcg) {
    try {
      d.alpha_hpcg = alpha_from_efficiency(*d.e_hpcg, n);
    } catch (const std::invalid_argument&) {
      // below the serial floor: leave absent
    }
  }
  return d;
}

std::string scatter_data(const std::vector<MachineRecord>& records) {
  if (records.empty()) throw DataError("no records to plot");
  std::vector<std::size_t> order(records.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return records[a].cores < records[b].cores;
  });

  std::string out = "# cores\te_hpl\te_hpcg\tone_minus_alpha\n";
  for (std::size_t i : order) {
    const MachineRecord& r = records[i];
    const DerivedMetrics d = derive(r);
    out += std::to_string(r.cores);
    out += '\t';
    out += fmt(d.e_hpl);
    out += '\t';
    if (d.e_hpcg) out += fmt(*d.e_hpcg);
    out += '\t';
    if (d.one_minus_alpha_hpl) out += fmt(*d.one_minus_alpha_hpl);
    out += '\n';
  }
  return out;
}

}  // namespace parscale
