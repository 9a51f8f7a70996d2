#pragma once

#include "errors.hpp"
#include "dense.hpp"
#include "structured.hpp"
#include "operators.hpp"
#include "fft.hpp"
#include "toeplitz_ops.hpp"
#include "chain.hpp"
#include "random.hpp"
#include "linalg.hpp"
#include "ge_decomp.hpp"
#include "minimal_decomp.hpp"
#include "segre.hpp"
#include "structure_guards.hpp"
#include "io.hpp"
#include "residual.hpp"
