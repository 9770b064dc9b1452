// Copyright 2026 The blast-sim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "spectrum/reports.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

#include "spectrum/error.hpp"

namespace spectrum::sim {
namespace fs = std::filesystem;
namespace {

class Output {
 public:
  explicit Output(const fs::path& path) : path_(path), out_(path, std::ios::binary | std::ios::trunc) {
    if (!out_) throw MarketError(ErrorCode::IoError, "cannot write " + path.string());
  }
  ~Output() = default;

  std::ofstream& stream() { return out_; }

  fs::path close() {
    out_.close();
    if (!out_) throw MarketError(ErrorCode::IoError, "failed writing " + path_.string());
    return path_;
  }

 private:
  fs::path path_;
  std::ofstream out_;
};

std::string fixed(double x, int places) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(places);
  os << x;
  return os.str();
}

MetricStats stats_of(const std::vector<double>& xs) {
  MetricStats s;
  if (xs.empty()) return s;
  double sum = 0.0;
  for (double x : xs) sum += x;
  s.mean = sum / static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - s.mean) * (x - s.mean);
    s.stddev = std::sqrt(ss / static_cast<double>(xs.size() - 1));
  }
  return s;
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw MarketError(ErrorCode::IoError, "cannot create " + dir.string() + ": " + ec.message());
}

}  // namespace

std::string summary_header() {
  return "scenario,mechanism,seed,trades,avg_price_per_mhz,surplus,shapley,efficiency,gini,hhi";
}

std::string summary_row(const Summary& s) {
  return s.scenario + "," + std::string(short_name(s.mechanism)) + "," + std::to_string(s.seed) + "," +
         std::to_string(s.trades) + "," + format_decimal(s.avg_price_per_mhz, 4) + "," +
         format_decimal(s.surplus, 2) + "," + format_decimal(s.shapley, 2) + "," +
         format_decimal(s.efficiency, 6) + "," + fixed(s.gini, 6) + "," + fixed(s.hhi, 6);
}

std::vector<fs::path> emit_reports(const RunArtifacts& a, const fs::path& dir) {
  ensure_dir(dir);
  std::vector<fs::path> written;

  {
    Output f(dir / "config.json");
    f.stream() << to_json(a.config).dump(2) << "\n";
    written.push_back(f.close());
  }
  {
    Output f(dir / "transactions.jsonl");
    for (const auto& tx : a.transactions) f.stream() << ledger::to_json(tx).dump() << "\n";
    written.push_back(f.close());
  }
  {
    Output f(dir / "trades.csv");
    f.stream() << "trade_id,tick,auction_id,mechanism,token,capacity_mhz,buyer,seller,price,price_per_mhz,"
                  "buyer_profit,seller_profit,surplus\n";
    for (const auto& t : a.trades) {
      const auto& r = t.trade;
      f.stream() << r.trade_id << "," << r.tick << "," << r.auction_id << "," << short_name(r.mechanism) << ","
                 << r.token_id << "," << r.capacity_mhz << "," << r.buyer << "," << r.seller << ","
                 << format_dollars(r.price) << ","
                 << format_decimal(to_dollars(r.price) / std::max<std::int64_t>(1, r.capacity_mhz), 4) << ","
                 << format_decimal(t.surplus.buyer_profit, 2) << "," << format_decimal(t.surplus.seller_profit, 2)
                 << "," << format_decimal(t.surplus.total, 2) << "\n";
    }
    written.push_back(f.close());
  }
  {
    Output f(dir / "metrics.csv");
    f.stream() << metrics::csv_header(a.agent_ids) << "\n";
    for (const auto& m : a.metrics) f.stream() << metrics::csv_row(m) << "\n";
    written.push_back(f.close());
  }
  {
    Output f(dir / "listings.csv");
    f.stream() << "auction_id,token,seller,tick,reserve,seller_value\n";
    for (const auto& l : a.listings) {
      f.stream() << l.auction_id << "," << l.token_id << "," << l.seller << "," << l.tick << ","
                 << format_dollars(l.reserve) << "," << format_decimal(l.seller_value, 2) << "\n";
    }
    written.push_back(f.close());
  }
  {
    Output f(dir / "summary.csv");
    f.stream() << summary_header() << "\n" << summary_row(a.summary) << "\n";
    written.push_back(f.close());
  }
  {
    auto poa = [](const econ::PriceOfAnarchy& p) {
      return nlohmann::json{{"market_failure", p.market_failure},
                            {"ratio", p.market_failure ? nlohmann::json(nullptr)
                                                       : nlohmann::json(to_double(p.ratio))}};
    };
    Output f(dir / "welfare.json");
    nlohmann::json doc = {
        {"buyer_profit", to_double(a.summary.buyer_profit)},
        {"seller_profit", to_double(a.summary.seller_profit)},
        {"trade_value", to_double(a.summary.trade_value)},
        {"market_price_of_anarchy", poa(a.market_poa)},
        {"auction_price_of_anarchy", poa(a.auction_poa)},
        {"invariant_violations", a.invariant_violations},
    };
    f.stream() << doc.dump(2) << "\n";
    written.push_back(f.close());
  }
  {
    Output f(dir / "privacy_snapshots.jsonl");
    for (const auto& s : a.privacy_snapshots) f.stream() << privacy::to_json(s).dump() << "\n";
    written.push_back(f.close());
  }
  {
    Output f(dir / "privacy_report.json");
    f.stream() << privacy::to_json(a.privacy_report).dump(2) << "\n";
    written.push_back(f.close());
  }
  {
    Output f(dir / "world_state.json");
    f.stream() << a.final_world_state << "\n";
    written.push_back(f.close());
  }
  {
    Output f(dir / "events.log");
    for (const auto& e : a.events) f.stream() << e << "\n";
    written.push_back(f.close());
  }
  return written;
}

std::vector<AggregateRow> aggregate(const std::vector<Summary>& summaries) {
  std::vector<AggregateRow> rows;
  std::vector<std::vector<const Summary*>> groups;
  for (const auto& s : summaries) {
    std::size_t g = 0;
    while (g < rows.size() && !(rows[g].scenario == s.scenario && rows[g].mechanism == s.mechanism)) ++g;
    if (g == rows.size()) {
      AggregateRow row;
      row.scenario = s.scenario;
      row.mechanism = s.mechanism;
      rows.push_back(std::move(row));
      groups.emplace_back();
    }
    groups[g].push_back(&s);
  }
  for (std::size_t g = 0; g < rows.size(); ++g) {
    auto column = [&](const std::function<double(const Summary&)>& get) {
      std::vector<double> xs;
      for (const Summary* s : groups[g]) xs.push_back(get(*s));
      return stats_of(xs);
    };
    AggregateRow& r = rows[g];
    r.runs = groups[g].size();
    r.trades = column([](const Summary& s) { return static_cast<double>(s.trades); });
    r.avg_price_per_mhz = column([](const Summary& s) { return to_double(s.avg_price_per_mhz); });
    r.surplus = column([](const Summary& s) { return to_double(s.surplus); });
    r.shapley = column([](const Summary& s) { return to_double(s.shapley); });
    r.efficiency = column([](const Summary& s) { return to_double(s.efficiency); });
    r.gini = column([](const Summary& s) { return s.gini; });
    r.hhi = column([](const Summary& s) { return s.hhi; });
  }
  return rows;
}

std::vector<fs::path> emit_batch_summary(const std::vector<Summary>& summaries, const fs::path& dir) {
  ensure_dir(dir);
  std::vector<fs::path> written;
  {
    Output f(dir / "summary.csv");
    f.stream() << summary_header() << "\n";
    for (const auto& s : summaries) f.stream() << summary_row(s) << "\n";
    written.push_back(f.close());
  }
  const auto rows = aggregate(summaries);
  const bool batched = std::any_of(rows.begin(), rows.end(), [](const AggregateRow& r) { return r.runs > 1; });
  if (batched) {
    Output f(dir / "aggregate.csv");
    f.stream() << "scenario,mechanism,runs";
    for (const char* m : {"trades", "avg_price_per_mhz", "surplus", "shapley", "efficiency", "gini", "hhi"}) {
      f.stream() << "," << m << "_mean," << m << "_stddev";
    }
    f.stream() << "\n";
    for (const auto& r : rows) {
      f.stream() << r.scenario << "," << short_name(r.mechanism) << "," << r.runs;
      for (const MetricStats* m : {&r.trades, &r.avg_price_per_mhz, &r.surplus, &r.shapley, &r.efficiency,
                                   &r.gini, &r.hhi}) {
        f.stream() << "," << fixed(m->mean, 6) << "," << fixed(m->stddev, 6);
      }
      f.stream() << "\n";
    }
    written.push_back(f.close());
  }
  return written;
}

}  // namespace spectrum::sim
