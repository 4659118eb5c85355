#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>

namespace expool {

// Accounts for the scalars a learner keeps between days, in "words"
// (one word = one stored scalar).  Scratch used while processing a single
// day is exempt; persisted state is not.
//
// Charges and discharges are labelled so audits can break usage down by
// component.  Discharging below zero is an accounting bug and aborts.
class MemoryMeter {
public:
    void charge(std::size_t words, std::string_view label);
    void discharge(std::size_t words, std::string_view label);

    std::size_t current_words() const { return current_; }
    std::size_t peak_words() const { return peak_; }

    const std::map<std::string, std::size_t>& by_label() const { return by_label_; }

private:
    std::size_t current_ = 0;
    std::size_t peak_ = 0;
    std::map<std::string, std::size_t> by_label_;
};

// RAII-style handle on a metered allocation.  Components hold one lease per
// structure and resize it as the structure grows or shrinks; the destructor
// returns the outstanding words, which is how "every charge has a matching
// discharge by end of run" is kept true by construction.
class MeterLease {
public:
    MeterLease() = default;
    MeterLease(MemoryMeter* meter, std::string label) : meter_(meter), label_(std::move(label)) {}
    MeterLease(const MeterLease&) = delete;
    MeterLease& operator=(const MeterLease&) = delete;
    MeterLease(MeterLease&& other) noexcept { *this = static_cast<MeterLease&&>(other); }
    MeterLease& operator=(MeterLease&& other) noexcept;
    ~MeterLease() { release(); }

    // Grow or shrink the leased amount to `words`.
    void resize(std::size_t words);
    void add(std::size_t words) { resize(words_ + words); }
    void release();

    std::size_t words() const { return words_; }

private:
    MemoryMeter* meter_ = nullptr;
    std::string label_;
    std::size_t words_ = 0;
};

}  // namespace expool
