#pragma once

#include "abstrans/abstraction.hpp"
#include "abstrans/analysis.hpp"
#include "abstrans/closure.hpp"
#include "abstrans/errors.hpp"
#include "abstrans/input_word.hpp"
#include "abstrans/output_word.hpp"
#include "abstrans/reduction.hpp"
#include "abstrans/semantics.hpp"
#include "abstrans/symbol.hpp"
#include "abstrans/text_format.hpp"
#include "abstrans/transducer.hpp"
