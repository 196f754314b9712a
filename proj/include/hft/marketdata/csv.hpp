#pragma once

#include "hft/marketdata/lob.hpp"

#include <string>

namespace hft {

// Row format (header required):
//   ts,bid_px_1..m,bid_qty_1..m,ask_px_1..m,ask_qty_1..m,open,high,low,close
struct CsvSpec {
  int max_levels = 5;
  enum class Fill { none, hold } fill = Fill::none;
  Index max_gap_s = 60;  // largest gap fill=hold will repair
};

MarketSeries load_market_csv(const std::string& path, const CsvSpec& spec = {});
void save_market_csv(const MarketSeries& series, const std::string& path);

}  // namespace hft
