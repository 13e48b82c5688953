#include "dfq/baselines.hpp"

#include <algorithm>
#include <chrono>
#include <condition_variable>
#include <deque>
#include <exception>
#include <mutex>
#include <thread>

#include "dfq/errors.hpp"

namespace dfq {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct PairHash {
  std::size_t operator()(const ActivityPair& p) const noexcept {
    const std::size_t h1 = std::hash<std::string>{}(p.first);
    const std::size_t h2 = std::hash<std::string>{}(p.second);
    return h1 ^ (h2 + 0x9e3779b97f4a7c15ULL + (h1 << 6) + (h1 >> 2));
  }
};

// Single-producer single-consumer queue with a fixed capacity. close() lets
// the consumer drain what is left and then observe end of stream.
template <typename T>
class BoundedChannel {
 public:
  explicit BoundedChannel(std::size_t capacity) : capacity_(capacity) {}

  void push(T item) {
    std::unique_lock lock(mu_);
    not_full_.wait(lock, [&] { return items_.size() < capacity_; });
    items_.push_back(std::move(item));
    not_empty_.notify_one();
  }

  void close() {
    std::lock_guard lock(mu_);
    closed_ = true;
    not_empty_.notify_one();
  }

  std::optional<T> pop() {
    std::unique_lock lock(mu_);
    not_empty_.wait(lock, [&] { return !items_.empty() || closed_; });
    if (items_.empty()) return std::nullopt;
    T item = std::move(items_.front());
    items_.pop_front();
    not_full_.notify_one();
    return item;
  }

 private:
  std::size_t capacity_;
  std::mutex mu_;
  std::condition_variable not_full_;
  std::condition_variable not_empty_;
  std::deque<T> items_;
  bool closed_ = false;
};

// Consumer side of the sorted stream: rows arrive ordered by (case, time).
class StreamingBlocks {
 public:
  void consume(const FlatRow& row) {
    if (!started_ || row.case_id != case_id_) {
      finish_case();
      started_ = true;
      case_id_ = row.case_id;
      current_.push_back(row.activity);
      current_time_ = row.timestamp;
      return;
    }
    if (row.timestamp == current_time_) {
      current_.push_back(row.activity);
      return;
    }
    close_block();
    current_.push_back(row.activity);
    current_time_ = row.timestamp;
  }

  Dfr finish() {
    finish_case();
    Dfr out;
    for (const auto& [pair, n] : counts_) out.add(pair.first, pair.second, n);
    return out;
  }

 private:
  void close_block() {
    for (const auto& a : previous_)
      for (const auto& b : current_) ++counts_[ActivityPair{a, b}];
    previous_.swap(current_);
    current_.clear();
  }

  void finish_case() {
    close_block();
    previous_.clear();
  }

  bool started_ = false;
  std::string case_id_;
  Timestamp current_time_ = 0;
  std::vector<std::string> previous_;
  std::vector<std::string> current_;
  std::unordered_map<ActivityPair, Frequency, PairHash> counts_;
};

}  // namespace

FlatTable FlatTable::from_log(const EventLog& log) {
  FlatTable t;
  t.rows.reserve(log.event_count());
  for (const auto& e : log.events_by_id()) t.rows.push_back(FlatRow{e.case_id, e.activity, e.timestamp});
  return t;
}

void FlatTable::build_index() {
  std::unordered_map<std::string, std::vector<std::size_t>> index;
  for (std::size_t i = 0; i < rows.size(); ++i) index[rows[i].case_id].push_back(i);
  for (auto& [case_id, positions] : index) {
    std::sort(positions.begin(), positions.end(), [this](std::size_t a, std::size_t b) {
      if (rows[a].timestamp != rows[b].timestamp) return rows[a].timestamp < rows[b].timestamp;
      return a < b;
    });
  }
  case_index = std::move(index);
}

Dfr nested_join_dfr(const FlatTable& t) {
  // Case ids are compared as small integers; the scan shape is unchanged.
  const std::size_t n = t.rows.size();
  std::vector<std::uint32_t> case_of(n);
  std::vector<Timestamp> time_of(n);
  {
    std::unordered_map<std::string, std::uint32_t> ids;
    for (std::size_t i = 0; i < n; ++i) {
      case_of[i] = ids.try_emplace(t.rows[i].case_id, static_cast<std::uint32_t>(ids.size()))
                       .first->second;
      time_of[i] = t.rows[i].timestamp;
    }
  }

  Dfr out;
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (case_of[y] != case_of[x] || !(time_of[x] < time_of[y])) continue;
      bool exists_between = false;
      for (std::size_t z = 0; z < n; ++z) {
        if (case_of[z] == case_of[x] && time_of[x] < time_of[z] && time_of[z] < time_of[y]) {
          exists_between = true;
          break;
        }
      }
      if (!exists_between) out.add(t.rows[x].activity, t.rows[y].activity);
    }
  }
  return out;
}

Dfr nested_join_dfr_indexed(const FlatTable& t) {
  if (!t.case_index) throw PreconditionError("nested_join_dfr_indexed requires a case index");
  std::unordered_map<ActivityPair, Frequency, PairHash> counts;
  std::vector<Timestamp> times;
  for (const auto& [case_id, positions] : *t.case_index) {
    times.clear();
    for (std::size_t p : positions) times.push_back(t.rows[p].timestamp);
    for (std::size_t p = 0; p < positions.size(); ++p) {
      const auto succ_begin = std::upper_bound(times.begin(), times.end(), times[p]);
      if (succ_begin == times.end()) continue;
      const auto succ_end = std::upper_bound(succ_begin, times.end(), *succ_begin);
      const std::string& a = t.rows[positions[p]].activity;
      for (auto it = succ_begin; it != succ_end; ++it) {
        const auto q = static_cast<std::size_t>(it - times.begin());
        ++counts[ActivityPair{a, t.rows[positions[q]].activity}];
      }
    }
  }
  Dfr out;
  for (const auto& [pair, n] : counts) out.add(pair.first, pair.second, n);
  return out;
}

StreamResult sorted_stream_dfr(const FlatTable& t) {
  StreamResult result;

  auto start = Clock::now();
  std::vector<std::size_t> order(t.rows.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&t](std::size_t a, std::size_t b) {
    const FlatRow& ra = t.rows[a];
    const FlatRow& rb = t.rows[b];
    if (int c = ra.case_id.compare(rb.case_id); c != 0) return c < 0;
    if (ra.timestamp != rb.timestamp) return ra.timestamp < rb.timestamp;
    return a < b;
  });
  result.sort_seconds = seconds_since(start);

  constexpr std::size_t kBatch = 4096;
  constexpr std::size_t kCapacity = 8;
  BoundedChannel<std::vector<FlatRow>> channel(kCapacity);

  start = Clock::now();
  std::size_t received = 0;
  Dfr dfr;
  std::exception_ptr consumer_error;
  std::thread consumer([&] {
    try {
      StreamingBlocks blocks;
      while (auto batch = channel.pop()) {
        for (const auto& row : *batch) blocks.consume(row);
        received += batch->size();
      }
      dfr = blocks.finish();
    } catch (...) {
      consumer_error = std::current_exception();
      while (channel.pop()) {
      }
    }
  });

  std::vector<FlatRow> batch;
  batch.reserve(kBatch);
  for (std::size_t i : order) {
    batch.push_back(t.rows[i]);
    if (batch.size() == kBatch) {
      channel.push(std::move(batch));
      batch = {};
      batch.reserve(kBatch);
    }
  }
  if (!batch.empty()) channel.push(std::move(batch));
  channel.close();
  consumer.join();
  if (consumer_error) std::rethrow_exception(consumer_error);
  result.stream_seconds = seconds_since(start);

  result.dfr = std::move(dfr);
  result.transferred_rows = received;
  return result;
}

}  // namespace dfq
