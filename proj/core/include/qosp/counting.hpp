#pragma once

#include <cstdint>
#include <vector>

#include "qosp/config.hpp"
#include "qosp/dispersion.hpp"
#include "qosp/errors.hpp"
#include "qosp/philox.hpp"

namespace qosp {

/// Per-slot Bernoulli probabilities of the counting model. `conversion` is
/// the probability of detecting a retrieved photon given a herald in the
/// same slot; `noise` applies independently to every slot.
struct SlotProbabilities {
  double herald = 0.0;
  double conversion = 0.0;
  double noise = 0.0;

  void validate() const;

  /// P(signal fires | herald) = 1 - (1-conversion)(1-noise).
  double signal_given_herald() const { return 1.0 - (1.0 - conversion) * (1.0 - noise); }
  /// Unconditional P(signal) = p_h*conversion + noise - p_h*conversion*noise.
  double signal() const { return herald * signal_given_herald() + (1.0 - herald) * noise; }
};

/// Probabilities for one experimental setting: herald from the source,
/// conversion eta_h * eta_fc(read) * exp(-delay/lifetime), noise floor from
/// the config.
SlotProbabilities slot_probabilities(const ExperimentConfig& cfg, const SellmeierModel& model,
                                     const PulseSpec& read, double delay_ps);

/// Detector outcome of one trigger slot.
struct TrialOutcome {
  std::uint64_t slot_index = 0;
  bool herald_fired = false;
  bool signal_fired = false;
  bool signal_is_noise = false; // noise-only detection (no retrieved photon)
};

/// Evaluate one slot. Fully determined by (probs, slot, seed, stream); any
/// slot can be inspected without simulating its neighbours.
TrialOutcome simulate_slot(const SlotProbabilities& probs, std::uint64_t slot,
                           std::uint64_t seed, std::uint64_t stream = 0);

/// Aggregate counts over a block of slots.
struct CountRecord {
  std::uint64_t n_slots = 0;
  std::uint64_t n_herald = 0;
  std::uint64_t n_signal = 0;
  std::uint64_t n_coincidence = 0;
};

/// Coincidences between signal detections and heralds offset by whole slots.
/// Offset 0 holds true plus accidental coincidences; pair correlations are
/// single-slot, so every other offset samples accidentals only.
struct CoincidenceHistogram {
  std::vector<int> bin_offsets;      // slot offsets, e.g. -2..+2
  std::vector<std::uint64_t> counts; // one per offset

  void validate() const;
};

struct SlotSimSummary {
  CountRecord record;
  CoincidenceHistogram histogram;
};

/// Simulate n_slots trigger slots. Deterministic for fixed (probs, n_slots,
/// seed, stream) and independent of n_shards; shards partition the global
/// slot index range and merge by summation. n_shards == 0 picks a value from
/// the hardware.
CountRecord simulate_slots(const SlotProbabilities& probs, std::uint64_t n_slots,
                           std::uint64_t seed, std::uint64_t stream = 0, unsigned n_shards = 0);

/// As simulate_slots, additionally accumulating the coincidence histogram
/// over the given maximum offset (bins -max_offset..+max_offset).
SlotSimSummary simulate_with_histogram(const SlotProbabilities& probs, std::uint64_t n_slots,
                                       std::uint64_t seed, std::uint64_t stream = 0,
                                       unsigned n_shards = 0, int max_offset = 2);

/// Convenience wrappers deriving the probabilities from an experiment
/// configuration and read setting.
CountRecord simulate_slots(const ExperimentConfig& cfg, const SellmeierModel& model,
                           const PulseSpec& read, double delay_ps, std::uint64_t n_slots,
                           std::uint64_t seed, std::uint64_t stream = 0, unsigned n_shards = 0);

SlotSimSummary coincidence_histogram(const ExperimentConfig& cfg, const SellmeierModel& model,
                                     const PulseSpec& read, double delay_ps, std::uint64_t n_slots,
                                     std::uint64_t seed, std::uint64_t stream = 0,
                                     unsigned n_shards = 0);

/// Mean of the off-center bins: the accidental coincidence rate estimate.
/// Requires bins at offsets +-1 and +-2.
double accidental_estimate(const CoincidenceHistogram& h);

/// Signed background-subtracted count with propagated Poisson error
/// sqrt(on + off). Negative results are preserved.
struct SubtractedCounts {
  double value = 0.0;
  double sigma = 0.0;
};

SubtractedCounts background_subtract(double counts_on, double counts_off);

} // namespace qosp
