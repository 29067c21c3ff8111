#pragma once

#include <limits>
#include <stdexcept>

namespace lucky::detail {

template <class Fn>
void OutcomeWalker::walk(std::span<const Car> prefix, Fn&& fn)
{
    for (Car c : prefix)
        if (!place(c)) throw std::logic_error("outcome walker given an illegal prefix");
    recurse(fn);
    for (std::size_t i = 0; i < prefix.size(); ++i) unplace();
}

template <class Fn>
void OutcomeWalker::recurse(Fn& fn)
{
    if (static_cast<int>(word_.size()) == shape_.spots()) {
        fn(std::span<const Car>(word_), product_.back());
        return;
    }
    for (Car c = 1; c <= shape_.cars(); ++c) {
        if (used_[c] || !place(c)) continue;
        recurse(fn);
        unplace();
    }
    if (place(kEmpty)) {
        recurse(fn);
        unplace();
    }
}

}  // namespace lucky::detail
