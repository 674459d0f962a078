#include "qosp/counting.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <string>
#include <thread>

#include "qosp/memory.hpp"

namespace qosp {

void SlotProbabilities::validate() const {
  for (double p : {herald, conversion, noise})
    if (!(p >= 0.0 && p <= 1.0) || !std::isfinite(p))
      throw ConfigError("slot probability outside [0, 1]: " + std::to_string(p));
}

SlotProbabilities slot_probabilities(const ExperimentConfig& cfg, const SellmeierModel& model,
                                     const PulseSpec& read, double delay_ps) {
  SlotProbabilities p;
  p.herald = cfg.p_herald;
  p.conversion = cfg.eta_h * conversion_efficiency(model, read.center_nm, cfg) *
                 storage_decay(delay_ps, cfg);
  p.noise = cfg.p_noise;
  p.validate();
  return p;
}

TrialOutcome simulate_slot(const SlotProbabilities& probs, std::uint64_t slot,
                           std::uint64_t seed, std::uint64_t stream) {
  const auto words = Philox4x64::block({slot, 0, 0, 0}, {seed, stream});
  TrialOutcome t;
  t.slot_index = slot;
  t.herald_fired = u64_to_unit(words[0]) < probs.herald;
  const bool converted = t.herald_fired && u64_to_unit(words[1]) < probs.conversion;
  const bool noise = u64_to_unit(words[2]) < probs.noise;
  t.signal_fired = converted || noise;
  t.signal_is_noise = noise && !converted;
  return t;
}

namespace {

struct ShardAccumulator {
  CountRecord record;
  std::vector<std::uint64_t> hist;
};

// Accumulate counts for global slots [begin, end). Histogram contributions
// are attributed to the signal slot; a sliding window of neighbouring
// outcomes supplies the offset heralds, and every outcome is a pure function
// of its global slot index, so the result is independent of how the range is
// sharded.
ShardAccumulator run_range(const SlotProbabilities& probs, std::uint64_t begin, std::uint64_t end,
                           std::uint64_t n_slots, std::uint64_t seed, std::uint64_t stream,
                           int max_offset, bool with_hist) {
  ShardAccumulator acc;
  acc.record.n_slots = end - begin;

  if (!with_hist) {
    for (std::uint64_t slot = begin; slot < end; ++slot) {
      const TrialOutcome t = simulate_slot(probs, slot, seed, stream);
      acc.record.n_herald += t.herald_fired;
      acc.record.n_signal += t.signal_fired;
      acc.record.n_coincidence += (t.herald_fired && t.signal_fired);
    }
    return acc;
  }

  const int window = 2 * max_offset + 1;
  acc.hist.assign(static_cast<std::size_t>(window), 0);

  // Window of outcomes for slots [center - max_offset, center + max_offset];
  // slots outside [0, n_slots) stay as empty outcomes.
  std::vector<TrialOutcome> outcomes(static_cast<std::size_t>(window));
  auto outcome_at = [&](std::uint64_t slot) {
    return slot < n_slots ? simulate_slot(probs, slot, seed, stream) : TrialOutcome{};
  };
  for (int off = -max_offset; off <= max_offset; ++off) {
    const long long s = static_cast<long long>(begin) + off;
    if (s >= 0) outcomes[static_cast<std::size_t>(off + max_offset)] = outcome_at(static_cast<std::uint64_t>(s));
  }

  const auto center = static_cast<std::size_t>(max_offset);
  for (std::uint64_t slot = begin; slot < end; ++slot) {
    const TrialOutcome& t = outcomes[center];
    acc.record.n_herald += t.herald_fired;
    acc.record.n_signal += t.signal_fired;
    acc.record.n_coincidence += (t.herald_fired && t.signal_fired);
    if (t.signal_fired)
      for (int b = 0; b < window; ++b)
        acc.hist[static_cast<std::size_t>(b)] += outcomes[static_cast<std::size_t>(b)].herald_fired;

    for (int b = 0; b + 1 < window; ++b)
      outcomes[static_cast<std::size_t>(b)] = outcomes[static_cast<std::size_t>(b + 1)];
    outcomes[static_cast<std::size_t>(window - 1)] =
        outcome_at(slot + 1 + static_cast<std::uint64_t>(max_offset));
  }
  return acc;
}

SlotSimSummary simulate_impl(const SlotProbabilities& probs, std::uint64_t n_slots,
                             std::uint64_t seed, std::uint64_t stream, unsigned n_shards,
                             int max_offset, bool with_hist) {
  probs.validate();
  if (n_slots < 1) throw ConfigError("n_slots must be >= 1");
  if (n_shards == 0) {
    const unsigned hw = std::thread::hardware_concurrency();
    n_shards = hw == 0 ? 1 : hw;
  }
  n_shards = static_cast<unsigned>(std::min<std::uint64_t>(n_shards, n_slots));

  std::vector<std::future<ShardAccumulator>> futures;
  futures.reserve(n_shards);
  const std::uint64_t chunk = n_slots / n_shards;
  const std::uint64_t rest = n_slots % n_shards;
  std::uint64_t begin = 0;
  for (unsigned s = 0; s < n_shards; ++s) {
    const std::uint64_t size = chunk + (s < rest ? 1 : 0);
    const std::uint64_t end = begin + size;
    futures.push_back(std::async(std::launch::async, run_range, probs, begin, end, n_slots, seed,
                                 stream, max_offset, with_hist));
    begin = end;
  }

  SlotSimSummary out;
  out.record.n_slots = n_slots;
  if (with_hist) {
    out.histogram.bin_offsets.resize(static_cast<std::size_t>(2 * max_offset + 1));
    for (int b = -max_offset; b <= max_offset; ++b)
      out.histogram.bin_offsets[static_cast<std::size_t>(b + max_offset)] = b;
    out.histogram.counts.assign(out.histogram.bin_offsets.size(), 0);
  }
  for (auto& f : futures) {
    const ShardAccumulator acc = f.get();
    out.record.n_herald += acc.record.n_herald;
    out.record.n_signal += acc.record.n_signal;
    out.record.n_coincidence += acc.record.n_coincidence;
    for (std::size_t b = 0; b < acc.hist.size(); ++b) out.histogram.counts[b] += acc.hist[b];
  }
  return out;
}

} // namespace

CountRecord simulate_slots(const SlotProbabilities& probs, std::uint64_t n_slots,
                           std::uint64_t seed, std::uint64_t stream, unsigned n_shards) {
  return simulate_impl(probs, n_slots, seed, stream, n_shards, 0, false).record;
}

SlotSimSummary simulate_with_histogram(const SlotProbabilities& probs, std::uint64_t n_slots,
                                       std::uint64_t seed, std::uint64_t stream, unsigned n_shards,
                                       int max_offset) {
  if (max_offset < 1) throw ConfigError("max_offset must be >= 1");
  return simulate_impl(probs, n_slots, seed, stream, n_shards, max_offset, true);
}

CountRecord simulate_slots(const ExperimentConfig& cfg, const SellmeierModel& model,
                           const PulseSpec& read, double delay_ps, std::uint64_t n_slots,
                           std::uint64_t seed, std::uint64_t stream, unsigned n_shards) {
  return simulate_slots(slot_probabilities(cfg, model, read, delay_ps), n_slots, seed, stream, n_shards);
}

SlotSimSummary coincidence_histogram(const ExperimentConfig& cfg, const SellmeierModel& model,
                                     const PulseSpec& read, double delay_ps, std::uint64_t n_slots,
                                     std::uint64_t seed, std::uint64_t stream, unsigned n_shards) {
  return simulate_with_histogram(slot_probabilities(cfg, model, read, delay_ps), n_slots, seed,
                                 stream, n_shards);
}

void CoincidenceHistogram::validate() const {
  if (bin_offsets.size() != counts.size()) throw ShapeError("histogram offsets/counts length mismatch");
}

double accidental_estimate(const CoincidenceHistogram& h) {
  h.validate();
  double sum = 0.0;
  int found = 0;
  for (std::size_t i = 0; i < h.bin_offsets.size(); ++i) {
    const int off = h.bin_offsets[i];
    if (off == -2 || off == -1 || off == 1 || off == 2) {
      sum += static_cast<double>(h.counts[i]);
      ++found;
    }
  }
  if (found != 4) throw ShapeError("accidental estimate needs bins at offsets +-1 and +-2");
  return sum / 4.0;
}

SubtractedCounts background_subtract(double counts_on, double counts_off) {
  if (counts_on < 0.0 || counts_off < 0.0) throw DomainError("counts must be >= 0");
  return SubtractedCounts{counts_on - counts_off, std::sqrt(counts_on + counts_off)};
}

} // namespace qosp
