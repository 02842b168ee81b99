#include "filterscope/dataset.hpp"

#include <cmath>

#include "filterscope/error.hpp"

namespace filterscope {

std::string_view to_string(Modality m) noexcept {
  switch (m) {
    case Modality::EEG: return "EEG";
    case Modality::EOG: return "EOG";
    case Modality::EMG: return "EMG";
    case Modality::Other: return "other";
  }
  return "other";
}

Modality parse_modality(std::string_view text) {
  if (text == "EEG") return Modality::EEG;
  if (text == "EOG") return Modality::EOG;
  if (text == "EMG") return Modality::EMG;
  if (text == "other") return Modality::Other;
  throw Error(ErrorCode::Malformed, "unknown modality '" + std::string(text) + "'");
}

EpochDataset::EpochDataset(double sampling_rate_hz, std::size_t epoch_length_samples,
                           std::vector<ChannelInfo> channels, std::vector<std::string> classes,
                           std::vector<float> data, std::vector<int> labels, std::string label)
    : rate_(sampling_rate_hz),
      epoch_length_(epoch_length_samples),
      channels_(std::move(channels)),
      classes_(std::move(classes)),
      data_(std::move(data)),
      labels_(std::move(labels)),
      label_(std::move(label)) {
  if (!(rate_ > 0.0) || !std::isfinite(rate_)) {
    throw Error(ErrorCode::InvalidInput, "sampling rate must be positive and finite");
  }
  if (epoch_length_ < 2) throw Error(ErrorCode::InvalidInput, "epochs need at least 2 samples");
  if (channels_.empty()) throw Error(ErrorCode::InvalidInput, "dataset has no channels");
  if (classes_.empty()) throw Error(ErrorCode::InvalidInput, "dataset declares no classes");
  if (data_.size() != labels_.size() * channels_.size() * epoch_length_) {
    throw Error(ErrorCode::SizeMismatch,
                "data holds " + std::to_string(data_.size()) + " samples, expected " +
                    std::to_string(labels_.size() * channels_.size() * epoch_length_));
  }
  for (std::size_t e = 0; e < labels_.size(); ++e) {
    if (labels_[e] < 0 || static_cast<std::size_t>(labels_[e]) >= classes_.size()) {
      throw Error(ErrorCode::LabelOutOfRange, "epoch " + std::to_string(e) + " has label " +
                                                  std::to_string(labels_[e]) + " but only " +
                                                  std::to_string(classes_.size()) + " classes");
    }
  }
  for (std::size_t i = 0; i < data_.size(); ++i) {
    if (!std::isfinite(data_[i])) {
      throw Error(ErrorCode::NonFinite, "non-finite sample at flat index " + std::to_string(i));
    }
  }
}

std::span<const float> EpochDataset::epoch(std::size_t epoch, std::size_t channel) const {
  if (epoch >= epoch_count() || channel >= channel_count()) {
    throw Error(ErrorCode::OutOfRange, "epoch/channel index out of range");
  }
  return std::span<const float>(data_).subspan((epoch * channel_count() + channel) * epoch_length_,
                                               epoch_length_);
}

std::vector<std::size_t> EpochDataset::epochs_of_class(int class_index) const {
  std::vector<std::size_t> out;
  for (std::size_t e = 0; e < labels_.size(); ++e) {
    if (labels_[e] == class_index) out.push_back(e);
  }
  return out;
}

}  // namespace filterscope
