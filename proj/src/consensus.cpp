#include "vocarch/consensus.hpp"

#include <algorithm>
#include <cmath>

#include "vocarch/csv.hpp"
#include "vocarch/errors.hpp"

namespace vocarch {

std::vector<bool> fuse_voicing(std::span<const PitchTrack> tracks) {
  if (tracks.empty()) return {};
  const FrameGrid& grid = tracks.front().grid;
  for (const auto& t : tracks)
    if (!(t.grid == grid) || t.frames.size() != grid.n_frames)
      throw_error(ErrorCode::GridMismatch,
                  "voicing streams must share one frame grid");
  std::vector<bool> voiced(grid.n_frames, true);
  for (const auto& t : tracks)
    for (std::size_t i = 0; i < grid.n_frames; ++i)
      if (!t.frames[i].voiced) voiced[i] = false;
  return voiced;
}

std::optional<double> filter_f0_consensus(
    std::span<const std::optional<double>> estimates, double threshold) {
  if (estimates.empty()) return std::nullopt;
  std::vector<double> values;
  values.reserve(estimates.size());
  for (const auto& e : estimates) {
    if (!e） return std::nullopt;
    values.push_back(*e);
  }
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  const double median = n % 2 == 1
                            ? values[n / 2]
                            : 0.5 * (values[n / 2 - 1] + values[n / 2]);
  if (median <= 0.0) return std::nullopt;
  for (double v : values)
    if (std::abs(v - median) / median > threshold) return std::nullopt;
  return median;
}

std::optional<FormantFrame> filter_formant_consensus(const FormantFrame& raw,
                                                     const FormantFrame& sep,
                                                     double threshold) {
  if (!raw.complete() || !sep.complete()) return std::nullopt;
  FormantFrame consensus;
  for (int i = 0; i < 4; ++i) {
    const double a = *raw.f[i];
    const double b = *sep.f[i];
    const double mean = 0.5 * (a + b);
    if (mean <= 0.0 || std::abs(a - b) / mean > threshold) return std::nullopt;
    consensus.f[i] = mean;
    if (raw.b[i] && sep.b[i]) consensus.b[i] = 0.5 * (*raw.b[i] + *sep.b[i]);
  }
  return consensus;
}

std::optional<FormantFrame> filter_formant_consensus(const FormantFrame& raw) {
  if (!raw.complete()) return std::nullopt;
  return raw;
}

FusedSegment fuse_segment(const SegmentAnalysis& analysis,
                          const ConsensusThresholds& thresholds) {
  const bool degraded = analysis.degraded();

  std::vector<PitchTrack> voicing{analysis.ac_raw, analysis.nccf_raw,
                                  analysis.nccf_hilbert_raw};
  if (!degraded) {
    voicing.push_back(*analysis.ac_sep);
    voicing.push_back(*analysis.nccf_sep);
    voicing.push_back(*analysis.nccf_hilbert_sep);
  }
  const auto all_voiced = fuse_voicing(voicing);

  const FrameGrid& grid = analysis.grid;
  if (!(analysis.wide_raw.grid == grid))
    throw_error(ErrorCode::GridMismatch, "wide-range track grid differs");
  if (analysis.formants_raw.size() != grid.n_frames)
    throw_error(ErrorCode::GridMismatch, "formant stream length differs");
  if (!degraded) {
    if (!(analysis.wide_sep->grid == grid))
      throw_error(ErrorCode::GridMismatch, "separated wide-range grid differs");
    if (analysis.formants_sep->size() != grid.n_frames)
      throw_error(ErrorCode::GridMismatch, "separated formant stream length differs");
  }

  FusedSegment fused;
  fused.speaker_id = analysis.speaker_id;
  fused.program_id = analysis.program_id;
  fused.grid = grid;
  fused.frames.resize(grid.n_frames);

  std::size_t n_any = 0, n_voiced = 0, n_pitch = 0, n_formant = 0;
  for (std::size_t i = 0; i < grid.n_frames; ++i) {
    FusedFrame& frame = fused.frames[i];
    frame.time_s = grid.center(i);
    for (const auto& t : voicing)
      if (t.frames[i].voiced) ++frame.voiced_streams;
    if (frame.voiced_streams > 0) ++n_any;
    frame.voiced_all = all_voiced[i];
    if (!frame.voiced_all) continue;
    ++n_voiced;

    auto f0_of = [&](const PitchTrack& t) -> std::optional<double> {
      if (t.frames[i].voiced) return t.frames[i].f0_hz;
      return std::nullopt;
    };
    frame.f0_estimates.push_back(f0_of(analysis.ac_raw));
    frame.f0_estimates.push_back(f0_of(analysis.wide_raw));
    if (!degraded) {
      frame.f0_estimates.push_back(f0_of(*analysis.ac_sep));
      frame.f0_estimates.push_back(f0_of(*analysis.wide_sep));
    }
    frame.consensus_f0 =
        filter_f0_consensus(frame.f0_estimates, thresholds.f0_gross);
    frame.valid_pitch = frame.consensus_f0.has_value();
    if (!frame.valid_pitch) continue;
    ++n_pitch;

    frame.formants_raw = analysis.formants_raw[i];
    if (!degraded) {
      frame.formants_sep = (*analysis.formants_sep)[i];
      frame.consensus_formants = filter_formant_consensus(
          frame.formants_raw, frame.formants_sep, thresholds.formant_gross);
    } else {
      frame.consensus_formants = filter_formant_consensus(frame.formants_raw);
    }
    frame.valid_formants = frame.consensus_formants.has_value();
    if (frame.valid_formants) ++n_formant;
  }

  auto& stats = fused.stats;
  stats.total_frames = grid.n_frames;
  if (grid.n_frames > 0) {
    const double n = static_cast<double>(grid.n_frames);
    stats.fraction_voiced_any = n_any / n;
    stats.fraction_after_voicing = n_voiced / n;
    stats.fraction_after_f0 = n_pitch / n;
    stats.fraction_after_formants = n_formant / n;
  }
  return fused;
}

std::vector<SpeakerAdmission> reject_short_speakers(
    std::span<const FusedSegment> segments, double min_valid_s) {
  std::vector<SpeakerAdmission> out;
  auto find = [&out](const std::string& id) -> SpeakerAdmission& {
    for (auto& a : out)
      if (a.speaker_id == id) return a;
    out.push_back(SpeakerAdmission{id, 0.0, false});
    return out.back();
  };
  for (const auto& seg : segments) {
    std::size_t valid = 0;
    for (const auto& f : seg.frames)
      if (f.valid_pitch) ++valid;
    find(seg.speaker_id).valid_pitch_s += valid * seg.grid.hop_s;
  }
  for (auto& a : out) a.admitted = a.valid_pitch_s >= min_valid_s - 1e-9;
  return out;
}

RetentionStats aggregate_retention(std::span<const FusedSegment> segments) {
  RetentionStats agg;
  double any = 0, voiced = 0, pitch = 0, formant = 0;
  for (const auto& seg : segments) {
    const double n = static_cast<double>(seg.stats.total_frames);
    agg.total_frames += seg.stats.total_frames;
    any += seg.stats.fraction_voiced_any * n;
    voiced += seg.stats.fraction_after_voicing * n;
    pitch += seg.stats.fraction_after_f0 * n;
    formant += seg.stats.fraction_after_formants * n;
  }
  if (agg.total_frames > 0) {
    const double n = static_cast<double>(agg.total_frames);
    agg.fraction_voiced_any = any / n;
    agg.fraction_after_voicing = voiced / n;
    agg.fraction_after_f0 = pitch / n;
    agg.fraction_after_formants = formant / n;
  }
  return agg;
}

std::string fused_to_csv(const FusedSegment& segment) {
  std::string out = "time_s,voiced6,f0_consensus,valid_pitch,valid_formants,f1,f2,f3,f4\n";
  for (const auto& f : segment.frames) {
    out += csv::format_double(f.time_s, 3);
    out += ',' + std::to_string(f.voiced_streams);
    out += ',';
    if (f.consensus_f0) out += csv::format_double(*f.consensus_f0, 3);
    out += ',';
    out += f.valid_pitch ? '1' : '0';
    out += ',';
    out += f.valid_formants ? '1' : '0';
    for (int k = 0; k < 4; ++k) {
      out += ',';
      if (f.consensus_formants && f.consensus_formants->f[k])
        out += csv::format_double(*f.consensus_formants->f[k], 2);
    }
    out += '\n';
  }
  return out;
}

}  // namespace vocarch
