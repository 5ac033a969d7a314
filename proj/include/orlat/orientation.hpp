#pragma once

#include <cstdint>
#include <map>
#include <utility>

namespace orlat {

// Horizontal edge direction per row: -1, 0 or +1.
//
// The default rule gives row 0 no horizontal edges, rows above the axis
// edges to the right and rows below edges to the left.  A table rule holds
// explicit per-row values plus a default, so lookups are total.
class Orientation {
 public:
  Orientation() = default;  // sign rule

  static Orientation sign_rule() { return Orientation(); }

  static Orientation table(std::map<std::int64_t, int> values, int default_value) {
    Orientation o;
    o.is_table_ = true;
    o.table_ = std::move(values);
    o.default_ = clamp_dir(default_value);
    for (auto& [row, dir] : o.table_) dir = clamp_dir(dir);
    return o;
  }

  int at(std::int64_t y) const {
    if (!is_table_) return y == 0 ? 0 : (y < 0 ? -1 : 1);
    auto it = table_.find(y);
    return it == table_.end() ? default_ : it->second;
  }

  bool is_sign_rule() const { return !is_table_; }

 private:
  static int clamp_dir(int d) { return d < 0 ? -1 : (d > 0 ? 1 : 0); }

  bool is_table_ = false;
  std::map<std::int64_t, int> table_;
  int default_ = 0;
};

inline int orientation_at(const Orientation& o, std::int64_t y) { return o.at(y); }

}  // namespace orlat
