#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace drnet {

/// Splits [0, n) into at most `workers` contiguous blocks and calls
/// fn(block, begin, end) for each, one thread per block. Blocks are numbered in
/// ascending trial order so callers can reduce per-block results in that order.
/// Returns the number of blocks used. Exceptions from any block are rethrown.
template <class Fn>
std::size_t run_blocks(std::size_t n, unsigned workers, Fn&& fn) {
    const std::size_t blocks = std::max<std::size_t>(1, std::min<std::size_t>(workers, n));
    if (blocks == 1) {
        fn(std::size_t{0}, std::size_t{0}, n);
        return 1;
    }
    std::vector<std::exception_ptr> errors(blocks);
    std::vector<std::thread> threads;
    threads.reserve(blocks);
    for (std::size_t b = 0; b < blocks; ++b) {
        const std::size_t begin = n * b / blocks;
        const std::size_t end = n * (b + 1) / blocks;
        threads.emplace_back([&, b, begin, end] {
            try {
                fn(b, begin, end);
            } catch (...) {
                errors[b] = std::current_exception();
            }
        });
    }
    for (auto& t : threads) {
        t.join();
    }
    for (auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    return blocks;
}

}  // namespace drnet
