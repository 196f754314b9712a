#include "hft/marketdata/csv.hpp"

#include "hft/io/serde.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

namespace hft {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

double parse_double(const std::string& s, std::size_t row, const std::string& col) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0') {
    throw DataError("bad number '" + s + "' in column " + col + " at row " + std::to_string(row));
  }
  return v;
}

std::int64_t parse_ts(const std::string& s, std::size_t row) {
  std::int64_t v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw DataError("bad timestamp '" + s + "' at row " + std::to_string(row));
  }
  return v;
}

}  // namespace

MarketSeries load_market_csv(const std::string& path, const CsvSpec& spec) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open CSV file: " + path);

  std::string line;
  if (!std::getline(in, line)) throw DataError("empty CSV file: " + path);
  const auto header = split_csv_line(line);

  // Infer the book depth m from the header and check the full layout.
  int m = 0;
  for (const auto& h : header) {
    if (h.rfind("bid_px_", 0) == 0) ++m;
  }
  if (m < 1 || m > spec.max_levels) {
    throw DataError("CSV header must carry 1.." + std::to_string(spec.max_levels) +
                    " bid_px_* columns, found " + std::to_string(m));
  }
  std::vector<std::string> expected = {"ts"};
  for (int i = 1; i <= m; ++i) expected.push_back("bid_px_" + std::to_string(i));
  for (int i = 1; i <= m; ++i) expected.push_back("bid_qty_" + std::to_string(i));
  for (int i = 1; i <= m; ++i) expected.push_back("ask_px_" + std::to_string(i));
  for (int i = 1; i <= m; ++i) expected.push_back("ask_qty_" + std::to_string(i));
  for (const char* c : {"open", "high", "low", "close"}) expected.push_back(c);
  if (header != expected) {
    throw DataError("unexpected CSV header layout in " + path);
  }

  MarketSeries series;
  std::size_t row = 0;  // 1-based data row index for diagnostics
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    ++row;
    const auto f = split_csv_line(line);
    if (f.size() != expected.size()) {
      throw DataError("wrong field count at row " + std::to_string(row));
    }
    std::size_t k = 0;
    LobSnapshot lob;
    lob.ts = parse_ts(f[k++], row);
    lob.bids.resize(m);
    lob.asks.resize(m);
    for (int i = 0; i < m; ++i) lob.bids[i].price = parse_double(f[k++], row, "bid_px");
    for (int i = 0; i < m; ++i) lob.bids[i].qty = parse_double(f[k++], row, "bid_qty");
    for (int i = 0; i < m; ++i) lob.asks[i].price = parse_double(f[k++], row, "ask_px");
    for (int i = 0; i < m; ++i) lob.asks[i].qty = parse_double(f[k++], row, "ask_qty");
    OhlcBar bar;
    bar.ts = lob.ts;
    bar.open = parse_double(f[k++], row, "open");
    bar.high = parse_double(f[k++], row, "high");
    bar.low = parse_double(f[k++], row, "low");
    bar.close = parse_double(f[k++], row, "close");

    try {
      lob.validate(spec.max_levels);
      bar.validate();
    } catch (const DataError& e) {
      throw DataError(std::string(e.what()) + " (row " + std::to_string(row) + ")");
    }
    series.lobs.push_back(std::move(lob));
    series.second_bars.push_back(bar);
  }
  if (series.lobs.empty()) throw DataError("CSV has a header but no data rows: " + path);

  // Monotonicity first, then gap handling.
  for (std::size_t i = 1; i < series.lobs.size(); ++i) {
    if (series.lobs[i].ts <= series.lobs[i - 1].ts) {
      throw DataError("non-monotonic at row " + std::to_string(i + 1));
    }
  }

  MarketSeries filled;
  filled.symbol = series.symbol;
  for (std::size_t i = 0; i < series.lobs.size(); ++i) {
    if (i > 0) {
      const std::int64_t gap = series.lobs[i].ts - series.lobs[i - 1].ts;
      if (gap > 1) {
        if (spec.fill != CsvSpec::Fill::hold || gap - 1 > spec.max_gap_s) {
          throw DataError("gap of " + std::to_string(gap - 1) + "s before row " +
                          std::to_string(i + 1));
        }
        // Repeat the last snapshot across the gap; held bars are flat at the
        // previous close.
        for (std::int64_t d = 1; d < gap; ++d) {
          LobSnapshot lob = filled.lobs.back();
          lob.ts += 1;
          OhlcBar bar;
          bar.ts = lob.ts;
          const double px = filled.second_bars.back().close;
          bar.open = bar.high = bar.low = bar.close = px;
          filled.lobs.push_back(std::move(lob));
          filled.second_bars.push_back(bar);
        }
      }
    }
    filled.lobs.push_back(series.lobs[i]);
    filled.second_bars.push_back(series.second_bars[i]);
  }

  filled.rebuild_minute_bars();
  filled.validate(spec.max_levels);
  return filled;
}

void save_market_csv(const MarketSeries& series, const std::string& path) {
  if (series.lobs.empty()) throw DataError("refusing to save an empty series");
  const int m = static_cast<int>(series.lobs.front().bids.size());

  std::ostringstream out;
  out << "ts";
  for (int i = 1; i <= m; ++i) out << ",bid_px_" << i;
  for (int i = 1; i <= m; ++i) out << ",bid_qty_" << i;
  for (int i = 1; i <= m; ++i) out << ",ask_px_" << i;
  for (int i = 1; i <= m; ++i) out << ",ask_qty_" << i;
  out << ",open,high,low,close\n";

  for (std::size_t i = 0; i < series.lobs.size(); ++i) {
    const auto& lob = series.lobs[i];
    const auto& bar = series.second_bars[i];
    out << lob.ts;
    for (const auto& l : lob.bids) out << ',' << format_double(l.price);
    for (const auto& l : lob.bids) out << ',' << format_double(l.qty);
    for (const auto& l : lob.asks) out << ',' << format_double(l.price);
    for (const auto& l : lob.asks) out << ',' << format_double(l.qty);
    out << ',' << format_double(bar.open) << ',' << format_double(bar.high) << ','
        << format_double(bar.low) << ',' << format_double(bar.close) << '\n';
  }
  write_file(path, out.str());
}

}  // namespace hft
