#ifndef UCF_DETAIL_INDEXED_HEAP_HPP
#define UCF_DETAIL_INDEXED_HEAP_HPP

#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

namespace ucf::detail {

// 4-ary min-heap over ids in [0, capacity) with one slot per id, ordered by
// (key, id). Keys change in place, so no stale entries pile up.
class IndexedMinHeap {
 public:
  struct Item {
    double key;
    std::uint32_t id;
  };

  explicit IndexedMinHeap(std::size_t capacity) : pos_(capacity, kAbsent) {}

  bool empty() const noexcept { return items_.empty(); }
  std::size_t size() const noexcept { return items_.size(); }
  bool contains(std::uint32_t id) const noexcept { return pos_[id] != kAbsent; }
  const Item& top() const noexcept { return items_.front(); }

  void set(std::uint32_t id, double key) {
    if (pos_[id] == kAbsent) {
      pos_[id] = items_.size();
      items_.push_back({key, id});
      sift_up(items_.size() - 1);
      return;
    }
    std::size_t i = pos_[id];
    double old = items_[i].key;
    items_[i].key = key;
    if (key < old) {
      sift_up(i);
    } else {
      sift_down(i);
    }
  }

  void pop() { erase_at(0); }

  void erase(std::uint32_t id) {
    if (pos_[id] != kAbsent) erase_at(pos_[id]);
  }

 private:
  static constexpr std::size_t kAbsent = std::numeric_limits<std::size_t>::max();
  static constexpr std::size_t kArity = 4;

  static bool less(const Item& a, const Item& b) noexcept {
    return a.key != b.key ? a.key < b.key : a.id < b.id;
  }

  void place(std::size_t i, const Item& item) {
    items_[i] = item;
    pos_[item.id] = i;
  }

  void sift_up(std::size_t i) {
    Item item = items_[i];
    while (i > 0) {
      std::size_t parent = (i - 1) / kArity;
      if (!less(item, items_[parent])) break;
      place(i, items_[parent]);
      i = parent;
    }
    place(i, item);
  }

  void sift_down(std::size_t i) {
    Item item = items_[i];
    const std::size_t n = items_.size();
    while (true) {
      std::size_t first = i * kArity + 1;
      if (first >= n) break;
      std::size_t best = first;
      std::size_t last = first + kArity < n ? first + kArity : n;
      for (std::size_t c = first + 1; c < last; ++c) {
        if (less(items_[c], items_[best])) best = c;
      }
      if (!less(items_[best], item)) break;
      place(i, items_[best]);
      i = best;
    }
    place(i, item);
  }

  void erase_at(std::size_t i) {
    pos_[items_[i].id] = kAbsent;
    Item last = items_.back();
    items_.pop_back();
    if (i == items_.size()) return;
    place(i, last);
    sift_up(i);
    sift_down(pos_[last.id]);
  }

  std::vector<Item> items_;
  std::vector<std::size_t> pos_;
};

}  // namespace ucf::detail

#endif  // UCF_DETAIL_INDEXED_HEAP_HPP
