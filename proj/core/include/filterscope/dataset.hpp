#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace filterscope {

enum class Modality { EEG, EOG, EMG, Other };

std::string_view to_string(Modality m) noexcept;
Modality parse_modality(std::string_view text);

struct ChannelInfo {
  std::string name;
  Modality modality = Modality::Other;
};

/// Labelled epochs, stored epoch-major, then channel, then sample.
/// The constructor enforces shape, label and finiteness invariants. Per-class
/// epoch counts are checked where statistics are computed.
class EpochDataset {
 public:
  EpochDataset(double sampling_rate_hz, std::size_t epoch_length_samples,
               std::vector<ChannelInfo> channels, std::vector<std::string> classes,
               std::vector<float> data, std::vector<int> labels, std::string label = {});

  double sampling_rate_hz() const noexcept { return rate_; }
  std::size_t epoch_length_samples() const noexcept { return epoch_length_; }
  std::size_t epoch_count() const noexcept { return labels_.size(); }
  std::size_t channel_count() const noexcept { return channels_.size(); }
  std::size_t class_count() const noexcept { return classes_.size(); }
  const std::vector<ChannelInfo>& channels() const noexcept { return channels_; }
  const std::vector<std::string>& classes() const noexcept { return classes_; }
  const std::vector<int>& labels() const noexcept { return labels_; }
  std::span<const float> data() const noexcept { return data_; }
  const std::string& label() const noexcept { return label_; }

  std::span<const float> epoch(std::size_t epoch, std::size_t channel) const;
  std::vector<std::size_t> epochs_of_class(int class_index) const;

 private:
  double rate_;
  std::size_t epoch_length_;
  std::vector<ChannelInfo> channels_;
  std::vector<std::string> classes_;
  std::vector<float> data_;
  std::vector<int> labels_;
  std::string label_;
};

}  // namespace filterscope
