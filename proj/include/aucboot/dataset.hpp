#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace aucboot {

enum class ClassLabel : std::uint8_t { one = 1, two = 2 };

inline ClassLabel other_class(ClassLabel label) {
    return label == ClassLabel::one ? ClassLabel::two : ClassLabel::one;
}

/// Two-class dataset: row-major feature matrix plus per-case labels and
/// per-class index lists. Holds the empirical distribution all resampling
/// operations draw from (each case carries mass 1/n unless reweighted).
class LabeledDataset {
public:
    LabeledDataset() = default;
    explicit LabeledDataset(std::size_t dim) : dim_(dim) {}

    void append(std::span<const double> x, ClassLabel label) {
        if (dim_ == 0) dim_ = x.size();
        if (x.size() != dim_) throw std::invalid_argument("feature dimension mismatch");
        features_.insert(features_.end(), x.begin(), x.end());
        labels_.push_back(label);
        (label == ClassLabel::one ? class1_ : class2_).push_back(labels_.size() - 1);
    }

    void append(std::initializer_list<double> x, ClassLabel label) {
        append(std::span<const double>(x.begin(), x.size()), label);
    }

    std::size_t size() const { return labels_.size(); }
    std::size_t n1() const { return class1_.size(); }
    std::size_t n2() const { return class2_.size(); }
    std::size_t dim() const { return dim_; }

    std::span<const double> row(std::size_t i) const {
        return std::span<const double>(features_.data() + i * dim_, dim_);
    }
    double feature(std::size_t i, std::size_t j) const { return features_[i * dim_ + j]; }
    void set_feature(std::size_t i, std::size_t j, double v) { features_[i * dim_ + j] = v; }

    ClassLabel label(std::size_t i) const { return labels_[i]; }
    const std::vector<std::size_t>& class_indices(ClassLabel label) const {
        return label == ClassLabel::one ? class1_ : class2_;
    }
    const std::vector<std::size_t>& class1_indices() const { return class1_; }
    const std::vector<std::size_t>& class2_indices() const { return class2_; }

    /// New dataset holding the listed cases (duplicates allowed, order kept).
    LabeledDataset subset(std::span<const std::size_t> indices) const {
        LabeledDataset out(dim_);
        for (std::size_t i : indices) out.append(row(i), labels_[i]);
        return out;
    }

    /// Same cases with the two class roles exchanged.
    LabeledDataset swapped_classes() const {
        LabeledDataset out(dim_);
        for (std::size_t i = 0; i < size(); ++i) out.append(row(i), other_class(labels_[i]));
        return out;
    }

private:
    std::vector<double> features_;
    std::vector<ClassLabel> labels_;
    std::vector<std::size_t> class1_, class2_;
    std::size_t dim_ = 0;
};

}  // namespace aucboot
