#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "horizonlab/arena.hpp"
#include "horizonlab/common.hpp"

namespace horizonlab {

inline std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

// Metadata (timestamps, run descriptions) lives in a single leading comment
// line so outputs stay byte-comparable below it.
inline std::string csv_meta_line(const std::string& description) {
  return "# meta: " + description + "\n";
}

inline std::string trace_to_csv(const std::vector<RegretTrace>& traces,
                                const std::string& meta = "") {
  std::ostringstream out;
  if (!meta.empty()) out << csv_meta_line(meta);
  out << "round,learner_id,trial_id,loss,cum_loss,comparator,regret\n";
  for (const RegretTrace& tr : traces) {
    for (std::size_t r = 0; r < tr.loss.size(); ++r) {
      out << (r + 1) << ',' << tr.learner_id << ',' << tr.trial << ','
          << format_double(tr.loss[r]) << ',' << format_double(tr.cum_loss[r]) << ','
          << format_double(tr.comparator[r]) << ',' << format_double(tr.regret[r]) << '\n';
    }
  }
  return out.str();
}

inline std::string table_to_csv(const MaxRegretTable& table, const std::string& meta = "") {
  std::ostringstream out;
  if (!meta.empty()) out << csv_meta_line(meta);
  out << "round,learner_id,max_regret\n";
  for (std::size_t li = 0; li < table.learner_ids.size(); ++li)
    for (int r = 0; r < table.rounds; ++r)
      out << (r + 1) << ',' << table.learner_ids[li] << ','
          << format_double(table.max_regret[li][static_cast<std::size_t>(r)]) << '\n';
  return out.str();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << content;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Parses a batch table CSV (as written by table_to_csv) back into memory;
// comment lines are skipped.
inline MaxRegretTable table_from_csv(const std::string& content) {
  MaxRegretTable table;
  std::istringstream in(content);
  std::string line;
  bool header_seen = false;
  std::vector<std::string> order;
  std::vector<std::vector<double>> series;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      if (line != "round,learner_id,max_regret")
        throw std::runtime_error("unexpected CSV header: " + line);
      header_seen = true;
      continue;
    }
    std::istringstream row(line);
    std::string round_s, learner, value_s;
    if (!std::getline(row, round_s, ',') || !std::getline(row, learner, ',') ||
        !std::getline(row, value_s, ','))
      throw std::runtime_error("malformed CSV row: " + line);
    std::size_t idx = order.size();
    for (std::size_t i = 0; i < order.size(); ++i)
      if (order[i] == learner) idx = i;
    if (idx == order.size()) {
      order.push_back(learner);
      series.emplace_back();
    }
    series[idx].push_back(std::stod(value_s));
  }
  if (order.empty()) throw std::runtime_error("CSV contains no data rows");
  table.learner_ids = order;
  table.rounds = static_cast<int>(series[0].size());
  for (auto& s : series) {
    if (static_cast<int>(s.size()) != table.rounds)
      throw std::runtime_error("CSV series have unequal lengths");
    table.max_regret.push_back(std::move(s));
  }
  return table;
}

}  // namespace horizonlab
