#pragma once

// Umbrella header.

#include "famlift/coinductive.hpp"
#include "famlift/container.hpp"
#include "famlift/finset.hpp"
#include "famlift/inductive.hpp"
#include "famlift/io.hpp"
#include "famlift/stdlib.hpp"
