#include "caw/algebra.hpp"

namespace caw {

MultiMatrixAlgebra::MultiMatrixAlgebra(std::vector<std::pair<std::string, int>> blocks) {
    if (blocks.empty()) throw InputError("multi-matrix algebra needs at least one block");
    std::size_t off = 0;
    int s = 0;
    for (auto& [name, d] : blocks) {
        if (d <= 0) throw InputError("block dimension must be positive");
        blocks_.push_back({std::move(name), d, off});
        for (int i = 0; i < d * d; ++i) block_of_.push_back(s);
        off += static_cast<std::size_t>(d) * d;
        ++s;
    }
    dim_ = off;
    for (int t = 0; t < static_cast<int>(blocks_.size()); ++t)
        for (int i = 0; i < blocks_[t].dim; ++i) unit_support_.push_back(index_of(t, i, i));
    std::sort(unit_support_.begin(), unit_support_.end());
}

std::string MultiMatrixAlgebra::label(BasisIndex a) const {
    Label l = decode(a);
    return blocks_[l.block].name + "[" + std::to_string(l.row) + "," + std::to_string(l.col) + "]";
}

std::string MultiMatrixAlgebra::structure_key() const {
    std::string s = "mm";
    for (const auto& b : blocks_) s += ":" + std::to_string(b.dim);
    return s;
}

std::shared_ptr<MultiMatrixAlgebra> MultiMatrixAlgebra::full(int n, const std::string& name) {
    return std::make_shared<MultiMatrixAlgebra>(
        std::vector<std::pair<std::string, int>>{{name, n}});
}

std::shared_ptr<MultiMatrixAlgebra> MultiMatrixAlgebra::functions_on(int group_order) {
    std::vector<std::pair<std::string, int>> blocks;
    for (int k = 0; k < group_order; ++k) blocks.push_back({"d" + std::to_string(k), 1});
    return std::make_shared<MultiMatrixAlgebra>(std::move(blocks));
}

std::shared_ptr<MultiMatrixAlgebra> MultiMatrixAlgebra::tensor(
    const MultiMatrixAlgebra& other) const {
    std::vector<std::pair<std::string, int>> blocks;
    for (const auto& a : blocks_)
        for (const auto& b : other.blocks_)
            blocks.push_back({a.name + "(x)" + b.name, a.dim * b.dim});
    return std::make_shared<MultiMatrixAlgebra>(std::move(blocks));
}

} // namespace caw
