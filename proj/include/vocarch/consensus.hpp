#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vocarch/formant.hpp"
#include "vocarch/pitch.hpp"

namespace vocarch {

struct ConsensusThresholds {
  double f0_gross = 0.20;      // max relative deviation from the median
  double formant_gross = 0.20; // max relative raw-vs-separated gap
};

struct FusedFrame {
  double time_s = 0.0;
  int voiced_streams = 0;      // how many voicing streams marked the frame
  bool voiced_all = false;     // intersection of every voicing stream
  std::vector<std::optional<double>> f0_estimates;
  std::optional<double> consensus_f0;
  FormantFrame formants_raw;
  FormantFrame formants_sep;
  std::optional<FormantFrame> consensus_formants;
  bool valid_pitch = false;
  bool valid_formants = false;
};

// Fractions are relative to the segment's total frame count and shrink
// monotonically along the pipeline.
struct RetentionStats {
  std::size_t total_frames = 0;
  double fraction_voiced_any = 0.0;
  double fraction_after_voicing = 0.0;
  double fraction_after_f0 = 0.0;
  double fraction_after_formants = 0.0;
};

// All per-stream products of one segment. The separated-side members are
// empty in degraded single-signal mode (3 voicing / 2 F0 / 1 formant source).
struct SegmentAnalysis {
  std::string speaker_id;
  std::string program_id;
  FrameGrid grid;
  PitchTrack ac_raw, nccf_raw, nccf_hilbert_raw, wide_raw;
  std::optional<PitchTrack> ac_sep, nccf_sep, nccf_hilbert_sep, wide_sep;
  std::vector<FormantFrame> formants_raw;
  std::optional<std::vector<FormantFrame>> formants_sep;

  bool degraded() const { return !ac_sep.has_value(); }
};

struct FusedSegment {
  std::string speaker_id;
  std::string program_id;
  FrameGrid grid;
  std::vector<FusedFrame> frames;
  RetentionStats stats;
};

// Stage 1: a frame survives only when every voicing stream marks it voiced.
// All tracks must share one grid.
std::vector<bool> fuse_voicing(std::span<const PitchTrack> tracks);

// Stage 2: valid when every estimate is present and within `threshold` of
// their median (relative to the median); the consensus is that median.
std::optional<double> filter_f0_consensus(
    std::span<const std::optional<double>> estimates, double threshold = 0.20);

// Stage 3: valid when both frames carry four formants and each raw/separated
// pair differs by at most `threshold` of the pair mean; consensus is the
// per-formant mean. Single-source mode checks completeness only.
std::optional<FormantFrame> filter_formant_consensus(const FormantFrame& raw,
                                                     const FormantFrame& sep,
                                                     double threshold = 0.20);
std::optional<FormantFrame> filter_formant_consensus(const FormantFrame& raw);

FusedSegment fuse_segment(const SegmentAnalysis& analysis,
                          const ConsensusThresholds& thresholds = {});

struct SpeakerAdmission {
  std::string speaker_id;
  double valid_pitch_s = 0.0;
  bool admitted = false;
};

// A speaker stays only with >= min_valid_s seconds of valid pitch summed
// over all their segments.
std::vector<SpeakerAdmission> reject_short_speakers(
    std::span<const FusedSegment> segments, double min_valid_s = 10.0);

RetentionStats aggregate_retention(std::span<const FusedSegment> segments);

// time_s,voiced6,f0_consensus,valid_pitch,valid_formants,f1,f2,f3,f4
std::string fused_to_csv(const FusedSegment& segment);

}  // namespace vocarch
