#include "usc/hilbert.hpp"

namespace usc::hilbert {

HilbertSpace::HilbertSpace(std::vector<std::size_t> dims, std::vector<std::string> labels)
    : dims_(std::move(dims)), labels_(std::move(labels))
{
    if (dims_.empty()) {
        throw Error(ErrorKind::InvalidDimension, "Hilbert space needs at least one subsystem");
    }
    if (!labels_.empty() && labels_.size() != dims_.size()) {
        throw Error(ErrorKind::ShapeError, "label count does not match subsystem count");
    }
    total_ = 1;
    for (std::size_t d : dims_) {
        if (d < 2) throw Error(ErrorKind::InvalidDimension, "every subsystem dimension must be >= 2");
        total_ *= d;
    }
}

HilbertSpace HilbertSpace::single(std::size_t dim, std::string label)
{
    if (label.empty()) return HilbertSpace({dim});
    return HilbertSpace({dim}, {std::move(label)});
}

std::size_t HilbertSpace::dim(std::size_t site) const
{
    if (site >= dims_.size()) throw Error(ErrorKind::ShapeError, "site index out of range");
    return dims_[site];
}

std::size_t HilbertSpace::site(const std::string& label) const
{
    for (std::size_t k = 0; k < labels_.size(); ++k) {
        if (labels_[k] == label) return k;
    }
    throw Error(ErrorKind::ShapeError, "no subsystem labelled '" + label + "'");
}

std::size_t HilbertSpace::index(const std::vector<std::size_t>& occupation) const
{
    if (occupation.size() != dims_.size()) {
        throw Error(ErrorKind::ShapeError, "occupation list does not match subsystem count");
    }
    std::size_t idx = 0;
    for (std::size_t k = 0; k < dims_.size(); ++k) {
        if (occupation[k] >= dims_[k]) throw Error(ErrorKind::ShapeError, "occupation exceeds cutoff");
        idx = idx * dims_[k] + occupation[k];
    }
    return idx;
}

std::vector<std::size_t> HilbertSpace::occupation(std::size_t index) const
{
    if (index >= total_) throw Error(ErrorKind::ShapeError, "basis index out of range");
    std::vector<std::size_t> occ(dims_.size());
    for (std::size_t k = dims_.size(); k-- > 0;) {
        occ[k] = index % dims_[k];
        index /= dims_[k];
    }
    return occ;
}

} // namespace usc::hilbert
