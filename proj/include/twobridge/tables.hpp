#pragma once

// Built-in slope tables for 2-bridge links through ten crossings, the
// (4k-1)/8k fixtures, corpus verification and serialization.

#include <algorithm>
#include <charconv>
#include <iterator>
#include <optional>
#include <set>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "arith.hpp"
#include "slopes.hpp"

namespace twobridge {

// One line per link: "p/q<TAB>rolfsen or -<TAB>family; family; ...".
// Families are the 1 < t < 1/0 and s branches in the tables' own order.
// clang-format off
inline constexpr std::string_view builtin_corpus = R"corpus(1/2	2^2_1	(-t^-1, -t); (t^-1, t)
1/4	4^2_1	(-2, -2); (-2t^-1, -2t); (2t^-1, 2t)
3/8	5^2_1	(-4, -2); (0, 0); (-2t^-1, -2-2t); (2t^-1, 2t); (-3+s, -3-s)
1/6	6^2_1	(-3, -3); (-3t^-1, -3t); (3t^-1, 3t)
3/10	6^2_2	(-2-t^-1, -2-t); (2-t^-1, -t); (-2+t^-1, t); (2+t^-1, 2+t); (-3t^-1, -3t); (3t^-1, 3t); (s, -s)
5/12	6^2_3	(-6, -2); (0, 0); (-2t^-1, -4-2t); (-2t^-1, -2t); (2t^-1, 2t); (-4+2s, -4-2s)
3/14	7^2_1	(-5, -3); (-2-t^-1, -4-t); (-2+t^-1, -2+t); (-3t^-1, -2-3t); (-t^-1, -t); (t^-1, t); (3t^-1, 3t); (-4+s, -4-s)
7/16	7^2_3	(-8, -2); (0, 0); (-2t^-1, -6-2t); (-2t^-1, -2t); (2t^-1, 2t); (-5+3s, -5-3s)
5/18	7^2_2	(-2-t^-1, -2-t); (4-t^-1, -t); (-2+t^-1, -2+t); (-2+t^-1, 2+t); (4+t^-1, 2+t); (-3t^-1, -3t); (-t^-1, -t); (t^-1, t); (3t^-1, 2+3t); (4+s, 4-s); (1+2s, 1-2s)
1/8	8^2_1	(-4, -4); (-4t^-1, -4t); (4t^-1, 4t)
3/16	8^2_2	(0, -2); (2-2t^-1, -2t); (-3-t^-1, -3-t); (-3+t^-1, -1+t); (2+2t^-1, 2+2t); (-4t^-1, -4t); (4t^-1, 4t); (-1+s, -1-s)
9/20	8^2_6	(-10, -2); (0, 0); (-2t^-1, -8-2t); (-2t^-1, -2t); (2t^-1, 2t); (-6+4s, -6-4s)
5/22	8^2_3	(-7, -3); (-2-t^-1, -6-t); (-2-t^-1, -2-t); (-2+t^-1, -2+t); (-3t^-1, -4-3t); (-3t^-1, -3t); (-t^-1, -t); (t^-1, t); (3t^-1, 3t); (-5+2s, -5-2s)
7/24	8^2_4	(-4, -4); (-4, 0); (2, 0); (-2-2t^-1, -2-2t); (2-2t^-1, -2-2t); (-2+2t^-1, 2t); (2+2t^-1, 2+2t); (-4t^-1, -4t); (4t^-1, 4t); (1+s, 1-s); (-2+2s, -2-2s)
7/26	8^2_5	(-2-t^-1, -2-t); (6-t^-1, -t); (-2+t^-1, -2+t); (-2+t^-1, 4+t); (6+t^-1, 2+t); (-3t^-1, -3t); (-t^-1, -t); (t^-1, t); (3t^-1, 3t); (3t^-1, 4+3t); (5+2s, 5-2s); (2+3s, 2-3s)
11/30	8^2_7	(-7, -3); (-4-t^-1, -4-t); (-4+t^-1, -2+t); (-3t^-1, -4-3t); (-t^-1, -2-t); (-t^-1, -t); (t^-1, t); (3t^-1, 3t); (-2+s, -2-s); (-5+2s, -5-2s)
13/34	8^2_8	(-4-t^-1, -2-t); (4-t^-1, -2-t); (4-t^-1, 2-t); (-4+t^-1, -2+t); (-4+t^-1, 2+t); (4+t^-1, 2+t); (-3t^-1, -2-3t); (-t^-1, -2-t); (-t^-1, -t); (t^-1, t); (t^-1, 2+t); (3t^-1, 2+3t); (-4+s, -4-s); (-2+s, -2-s); (3s, -3s); (2+s, 2-s); (4+s, 4-s)
3/20	9^2_1	(-6, -4); (-3-t^-1, -5-t); (-3+t^-1, -3+t); (-4t^-1, -2-4t); (-2t^-1, -2t); (2t^-1, 2t); (4t^-1, 4t); (-5+s, -5-s)
5/24	9^2_4	(-6, -4); (-4, -6); (0, 0); (-2-2t^-1, -4-2t); (-2+2t^-1, -2+2t); (-4t^-1, -2-4t); (4t^-1, 4t); (-5+s, -5-s)
11/24	9^2_10	(-12, -2); (0, 0); (-2t^-1, -10-2t); (-2t^-1, -2t); (2t^-1, 2t); (-7+5s, -7-5s)
5/28	9^2_2	(2, -2); (4-2t^-1, -2t); (-3-t^-1, -3-t); (-3+t^-1, -3+t); (-3+t^-1, 1+t); (4+2t^-1, 2+2t); (-4t^-1, -4t); (-2t^-1, -2t); (2t^-1, 2t); (4t^-1, 2+4t); (2s, -2s); (5+s, 5-s)
7/30	9^2_3	(-9, -3); (-2-t^-1, -8-t); (-2-t^-1, -2-t); (-2+t^-1, -2+t); (-3t^-1, -6-3t); (-3t^-1, -3t); (-t^-1, -t); (t^-1, t); (3t^-1, 3t); (-6+3s, -6-3s)
7/32	9^2_5	(0, -4); (0, 0); (-2-2t^-1, -4-2t); (2-2t^-1, -2-2t); (2-2t^-1, 2-2t); (-5-t^-1, -3-t); (-5+t^-1, -1+t); (-2+2t^-1, -2+2t); (2+2t^-1, 2+2t); (-4t^-1, -2-4t); (4t^-1, 4t); (-5+s, -5-s); (-2+2s, -2-2s)
9/34	9^2_8	(-2-t^-1, -2-t); (8-t^-1, -t); (-2+t^-1, -2+t); (-2+t^-1, 6+t); (8+t^-1, 2+t); (-3t^-1, -3t); (-t^-1, -t); (t^-1, t); (3t^-1, 3t); (3t^-1, 6+3t); (6+3s, 6-3s); (3+4s, 3-4s)
11/36	9^2_6	(-2, -2); (-2, 0); (2, 2); (-2-2t^-1, -2-2t); (2-2t^-1, -2t); (5-t^-1, 1-t); (5+t^-1, 3+t); (-2+2t^-1, 2+2t); (2+2t^-1, 4+2t); (-4t^-1, -4t); (-2t^-1, -2t); (2t^-1, 2t); (4t^-1, 2+4t); (-1+s, -1-s); (5+s, 5-s); (2+2s, 2-2s)
11/40	9^2_9	(-4, -4); (-4, 2); (0, 0); (4, 0); (-2-2t^-1, -2-2t); (4-2t^-1, -2-2t); (-2+2t^-1, -2+2t); (-2+2t^-1, 2+2t); (4+2t^-1, 2+2t); (-4t^-1, -4t); (4t^-1, 2+4t); (5+s, 5-s); (2+2s, 2-2s); (-1+3s, -1-3s)
13/44	9^2_7	(-6, -4); (-6, 0); (-2, -2); (-2, 0); (2, -2); (2, 0); (2, 2); (-4-2t^-1, -2-2t); (-2-2t^-1, -4-2t); (2-2t^-1, -4-2t); (2-2t^-1, -2t); (-4+2t^-1, 2t); (-2+2t^-1, 2t); (2+2t^-1, 2+2t); (-4t^-1, -2-4t); (-2t^-1, -2t); (2t^-1, 2t); (4t^-1, 4t); (-5+s, -5-s); (-1+s, -1-s); (2s, -2s); (1+s, 1-s); (-3+3s, -3-3s)
17/46	9^2_11	(-9, -3); (-6-t^-1, -4-t); (-4-t^-1, -6-t); (-4-t^-1, -2-t); (-6+t^-1, -2+t); (-4+t^-1, -2+t); (-3t^-1, -6-3t); (-3t^-1, -2-3t); (-t^-1, -4-t); (-t^-1, -2-t); (-t^-1, -t); (t^-1, t); (3t^-1, 3t); (-4+s, -4-s); (-2+s, -2-s); (-3+2s, -3-2s); (-6+3s, -6-3s)
19/50	9^2_12	(-4-t^-1, -2-t); (6-t^-1, -2-t); (6-t^-1, 2-t); (-4+t^-1, -2+t); (-4+t^-1, 4+t); (6+t^-1, 2+t); (-3t^-1, -2-3t); (-t^-1, -2-t); (-t^-1, -t); (t^-1, t); (t^-1, 4+t); (3t^-1, 3t); (3t^-1, 4+3t); (-4+s, -4-s); (-2+s, -2-s); (3+2s, 3-2s); (5+2s, 5-2s); (1+4s, 1-4s)
1/10	-	(-5, -5); (-5t^-1, -5t); (5t^-1, 5t)
3/22	-	(-1, -3); (2-3t^-1, -3t); (-4-t^-1, -4-t); (-4+t^-1, -2+t); (2+3t^-1, 2+3t); (-5t^-1, -5t); (5t^-1, 5t); (-2+s, -2-s)
5/26	-	(-1, 1); (1, -1); (-3-2t^-1, -3-2t); (3-2t^-1, 1-2t); (-3+2t^-1, -1+2t); (3+2t^-1, 3+2t); (-5t^-1, -5t); (5t^-1, 5t); (s, -s)
13/28	-	(-14, -2); (0, 0); (-2t^-1, -12-2t); (-2t^-1, -2t); (2t^-1, 2t); (-8+6s, -8-6s)
5/32	-	(-8, -4); (-3-t^-1, -7-t); (-3-t^-1, -3-t); (-3+t^-1, -3+t); (-4t^-1, -4-4t); (-4t^-1, -4t); (-2t^-1, -2t); (2t^-1, 2t); (4t^-1, 4t); (-6+2s, -6-2s)
7/38	-	(-5, -5); (-5, -1); (-2-3t^-1, -2-3t); (2-3t^-1, -2-3t); (-3-2t^-1, -3-2t); (2-t^-1, -t); (2+t^-1, t); (-3+2t^-1, -1+2t); (-2+3t^-1, 3t); (2+3t^-1, 2+3t); (-5t^-1, -5t); (-t^-1, -4-t); (t^-1, -2+t); (5t^-1, 5t); (s, -s); (2+s, 2-s); (-3+2s, -3-2s)
9/38	-	(-11, -3); (-2-t^-1, -10-t); (-2-t^-1, -2-t); (-2+t^-1, -2+t); (-3t^-1, -8-3t); (-3t^-1, -3t); (-t^-1, -t); (t^-1, t); (3t^-1, 3t); (-7+4s, -7-4s)
7/40	-	(4, -2); (6-2t^-1, -2t); (-3-t^-1, -3-t); (-3+t^-1, -3+t); (-3+t^-1, 3+t); (6+2t^-1, 2+2t); (-4t^-1, -4t); (-2t^-1, -2t); (2t^-1, 2t); (4t^-1, 4t); (4t^-1, 4+4t); (6+2s, 6-2s); (1+3s, 1-3s)
9/40	-	(-8, -4); (-4, -8); (-4, -4); (0, 0); (-2-2t^-1, -6-2t); (-2-2t^-1, -2-2t); (-2+2t^-1, -2+2t); (-4t^-1, -4-4t); (-4t^-1, -4t); (4t^-1, 4t); (-6+2s, -6-2s)
11/42	-	(-2-t^-1, -2-t); (10-t^-1, -t); (-2+t^-1, -2+t); (-2+t^-1, 8+t); (10+t^-1, 2+t); (-3t^-1, -3t); (-t^-1, -t); (t^-1, t); (3t^-1, 3t); (3t^-1, 8+3t); (7+4s, 7-4s); (4+5s, 4-5s)
13/42	-	(3, 1); (-2-3t^-1, -2-3t); (3-2t^-1, -1-2t); (-4-t^-1, -4-t); (-4+t^-1, t); (3+2t^-1, 3+2t); (-2+3t^-1, 3t); (-5t^-1, -5t); (-t^-1, -t); (t^-1, 2+t); (5t^-1, 5t); (2+s, 2-s); (-1+2s, -1-2s)
11/48	-	(0, -6); (0, 0); (-2-2t^-1, -6-2t); (-2-2t^-1, -2-2t); (2-2t^-1, -4-2t); (2-2t^-1, 2-2t); (-7-t^-1, -3-t); (-7+t^-1, -1+t); (-2+2t^-1, -2+2t); (2+2t^-1, 2+2t); (-4t^-1, -4-4t); (-4t^-1, -4t); (4t^-1, 4t); (-6+2s, -6-2s); (-3+3s, -3-3s)
17/48	-	(-8, -4); (-2, -4); (0, 0); (-2-2t^-1, -6-2t); (-5-t^-1, -5-t); (-5+t^-1, -3+t); (-2+2t^-1, -2+2t); (-4t^-1, -4-4t); (-2t^-1, -2-2t); (2t^-1, 2t); (4t^-1, 4t); (-3+s, -3-s); (-6+2s, -6-2s)
11/52	-	(-8, -4); (-6, -6); (-2, -4); (-2, -2); (0, -2); (0, 0); (-4-2t^-1, -4-2t); (-2-2t^-1, -6-2t); (-5-t^-1, -5-t); (-5+t^-1, -3+t); (-4+2t^-1, -2+2t); (-2+2t^-1, -2+2t); (-4t^-1, -4-4t); (-2t^-1, -2-2t); (-2t^-1, -2t); (2t^-1, 2t); (4t^-1, 4t); (-3+s, -3-s); (-1+s, -1-s); (-6+2s, -6-2s)
15/56	-	(-4, -4); (-4, 4); (0, 0); (6, 0); (-2-2t^-1, -2-2t); (6-2t^-1, -2-2t); (-2+2t^-1, -2+2t); (-2+2t^-1, 4+2t); (6+2t^-1, 2+2t); (-4t^-1, -4t); (4t^-1, 4t); (4t^-1, 4+4t); (4s, -4s); (6+2s, 6-2s); (3+3s, 3-3s)
17/56	-	(-2, -2); (-2, 0); (2, 0); (2, 2); (2, 4); (4, 2); (-2-2t^-1, -2-2t); (2-2t^-1, -2t); (7-t^-1, 1-t); (7+t^-1, 3+t); (-2+2t^-1, 2t); (-2+2t^-1, 4+2t); (2+2t^-1, 2+2t); (2+2t^-1, 6+2t); (-4t^-1, -4t); (-2t^-1, -2t); (2t^-1, 2t); (4t^-1, 4t); (4t^-1, 4+4t); (-1+s, -1-s); (1+s, 1-s); (6+2s, 6-2s); (3+3s, 3-3s)
17/58	-	(-2-3t^-1, -2-3t); (2-3t^-1, -2-3t); (2-3t^-1, -3t); (-4-t^-1, -4-t); (-4-t^-1, -t); (-2-t^-1, -t); (2-t^-1, -t); (4-t^-1, -2-t); (4-t^-1, 2-t); (-4+t^-1, -2+t); (-4+t^-1, 2+t); (-2+t^-1, t); (2+t^-1, t); (4+t^-1, t); (4+t^-1, 4+t); (-2+3t^-1, 3t); (-2+3t^-1, 2+3t); (2+3t^-1, 2+3t); (-5t^-1, -5t); (-t^-1, -2-t); (t^-1, 2+t); (5t^-1, 5t); (-2+s, -2-s); (s, -s); (3s, -3s); (2+s, 2-s); (-3+2s, -3-2s); (3+2s, 3-2s)
13/60	-	(-2, -4); (-2, -2); (0, 0); (0, 2); (2, -4); (2, 0); (-2-2t^-1, -4-2t); (4-2t^-1, -2-2t); (4-2t^-1, 2-2t); (-5-t^-1, -3-t); (-5+t^-1, -3+t); (-5+t^-1, 1+t); (-2+2t^-1, 2t); (4+2t^-1, 2+2t); (-4t^-1, -2-4t); (-2t^-1, -2-2t); (-2t^-1, -2t); (2t^-1, 2t); (4t^-1, 2+4t); (-5+s, -5-s); (-3+s, -3-s); (1+s, 1-s); (5+s, 5-s); (-1+3s, -1-3s)
23/62	-	(-11, -3); (-8-t^-1, -4-t); (-4-t^-1, -8-t); (-4-t^-1, -2-t); (-8+t^-1, -2+t); (-4+t^-1, -2+t); (-3t^-1, -8-3t); (-3t^-1, -2-3t); (-t^-1, -6-t); (-t^-1, -2-t); (-t^-1, -t); (t^-1, t); (3t^-1, 3t); (-4+s, -4-s); (-2+s, -2-s); (-4+3s, -4-3s); (-7+4s, -7-4s)
19/64	-	(-8, -4); (-8, 0); (-2, -2); (-2, 0); (2, -4); (2, 0); (2, 2); (-6-2t^-1, -2-2t); (-2-2t^-1, -6-2t); (-2-2t^-1, -2-2t); (2-2t^-1, -6-2t); (2-2t^-1, -2t); (-6+2t^-1, 2t); (-2+2t^-1, 2t); (2+2t^-1, 2+2t); (-4t^-1, -4-4t); (-4t^-1, -4t); (-2t^-1, -2t); (2t^-1, 2t); (4t^-1, 4t); (-1+s, -1-s); (1+s, 1-s); (-6+2s, -6-2s); (-1+3s, -1-3s); (-4+4s, -4-4s)
23/64	-	(-2, -4); (-2, -2); (-2, 0); (0, -2); (0, 0); (4, 0); (4, 2); (-2-2t^-1, -4-2t); (4-2t^-1, -2-2t); (-5-t^-1, -3-t); (-5+t^-1, -3+t); (-5+t^-1, 1+t); (-2+2t^-1, -2+2t); (-2+2t^-1, 2+2t); (4+2t^-1, 2+2t); (-4t^-1, -2-4t); (-2t^-1, -2-2t); (-2t^-1, -2t); (2t^-1, 2t); (2t^-1, 2+2t); (4t^-1, 2+4t); (-5+s, -5-s); (-3+s, -3-s); (3+s, 3-s); (5+s, 5-s); (2+2s, 2-2s); (-1+3s, -1-3s)
25/66	-	(-4-t^-1, -2-t); (8-t^-1, -2-t); (8-t^-1, 2-t); (-4+t^-1, -2+t); (-4+t^-1, 6+t); (8+t^-1, 2+t); (-3t^-1, -2-3t); (-t^-1, -2-t); (-t^-1, -t); (t^-1, t); (t^-1, 6+t); (3t^-1, 3t); (3t^-1, 6+3t); (-4+s, -4-s); (-2+s, -2-s); (4+3s, 4-3s); (6+3s, 6-3s); (2+5s, 2-5s)
19/68	-	(-2, -2); (-2, 2); (0, 0); (0, 2); (2, 0); (2, 4); (4, 2); (-2-2t^-1, -2-2t); (4-2t^-1, 2-2t); (4-2t^-1, -2t); (7-t^-1, 1-t); (7+t^-1, 3+t); (-2+2t^-1, 2t); (-2+2t^-1, 4+2t); (4+2t^-1, 4+2t); (-4t^-1, -4t); (-2t^-1, -2t); (2t^-1, 2t); (2t^-1, 2+2t); (4t^-1, 4+4t); (2s, -2s); (1+s, 1-s); (3+s, 3-s); (6+2s, 6-2s); (3+3s, 3-3s)
29/70	-	(-11, -3); (-6-t^-1, -6-t); (-6-t^-1, -2-t); (-6+t^-1, -2+t); (-3t^-1, -8-3t); (-3t^-1, -4-3t); (-3t^-1, -3t); (-t^-1, -4-t); (-t^-1, -t); (t^-1, t); (3t^-1, 3t); (-5+2s, -5-2s); (-3+2s, -3-2s); (-7+4s, -7-4s)
31/74	-	(-6-t^-1, -2-t); (6-t^-1, -4-t); (6-t^-1, 2-t); (-6+t^-1, -2+t); (-6+t^-1, 4+t); (6+t^-1, 2+t); (-3t^-1, -4-3t); (-3t^-1, -3t); (-t^-1, -4-t); (-t^-1, -t); (t^-1, t); (t^-1, 4+t); (3t^-1, 3t); (3t^-1, 4+3t); (5s, -5s); (-5+2s, -5-2s); (-3+2s, -3-2s); (3+2s, 3-2s); (5+2s, 5-2s)
21/76	-	(-6, -4); (-6, 2); (-2, -2); (-2, 2); (0, -2); (0, 0); (4, -2); (4, 0); (4, 2); (-4-2t^-1, -2-2t); (-2-2t^-1, -4-2t); (4-2t^-1, -4-2t); (4-2t^-1, -2t); (-4+2t^-1, -2+2t); (-4+2t^-1, 2+2t); (-2+2t^-1, -2+2t); (-2+2t^-1, 2+2t); (4+2t^-1, 2+2t); (-4t^-1, -2-4t); (-2t^-1, -2t); (2t^-1, 2t); (2t^-1, 2+2t); (4t^-1, 2+4t); (-5+s, -5-s); (-1+s, -1-s); (2s, -2s); (3+s, 3-s); (5+s, 5-s); (2+2s, 2-2s); (1+3s, 1-3s); (-2+4s, -2-4s)
31/80	-	(-8, -4); (-8, 0); (-4, -2); (-4, 0); (0, 0); (2, -2); (2, 2); (-4-2t^-1, -4-2t); (2-2t^-1, -6-2t); (2-2t^-1, -2-2t); (2-2t^-1, 2-2t); (-4+2t^-1, 2t); (2+2t^-1, 2+2t); (-4t^-1, -4-4t); (-2t^-1, -2-2t); (2t^-1, 2t); (4t^-1, 4t); (-3+s, -3-s); (2s, -2s); (-6+2s, -6-2s); (-2+2s, -2-2s); (-4+4s, -4-4s)
)corpus";
// clang-format on

struct CorpusRow {
    TwoBridgeLink link;
    std::optional<std::string> rolfsen;
    std::vector<SlopeFamily> families;
};

namespace detail {

inline Int parse_coef(std::string_view s, bool allow_unit) {
    if (allow_unit && (s.empty() || s == "+")) return 1;
    if (allow_unit && s == "-") return -1;
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    Int v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) throw std::invalid_argument("bad integer '" + std::string(s) + "'");
    return v;
}

// "c", "kvar" or "c+kvar" -> (c, k).
inline std::pair<Int, Int> parse_term(std::string_view s, std::string_view var) {
    const auto at = s.find(var);
    if (at == std::string_view::npos) return {parse_coef(s, false), 0};
    if (at + var.size() != s.size()) throw std::invalid_argument("trailing text after " + std::string(var));
    std::size_t split = 0;
    for (std::size_t i = 1; i < at; ++i) {
        if (s[i] == '+' || s[i] == '-') split = i;
    }
    const std::string_view c = s.substr(0, split);
    const std::string_view k = s.substr(split, at - split);
    return {c.empty() ? 0 : parse_coef(c, false), parse_coef(k, true)};
}

inline std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

}  // namespace detail

/// Parses a table-style family, "(-2t^-1, -2-2t)" or "(-3+s, -3-s)".
inline SlopeFamily parse_family(std::string_view text) {
    const std::string s = detail::trim(text);
    if (s.size() < 5 || s.front() != '(' || s.back() != ')') throw std::invalid_argument("family must be parenthesized: " + s);
    const auto comma = s.find(", ");
    if (comma == std::string::npos) throw std::invalid_argument("family needs two slopes: " + s);
    const std::string first = s.substr(1, comma - 1);
    const std::string second = s.substr(comma + 2, s.size() - comma - 3);
    if (first.find('s') != std::string::npos || second.find('s') != std::string::npos) {
        const auto [x1, y1] = detail::parse_term(first, "s");
        const auto [x2, y2] = detail::parse_term(second, "s");
        if (x1 != x2 || y1 != -y2) throw std::invalid_argument("not an s-family: " + s);
        return SlopeFamily::s_family(x1, y1);
    }
    const auto [x, y1] = detail::parse_term(first, "t^-1");
    const auto [z, y2] = detail::parse_term(second, "t");
    if (y1 != y2) throw std::invalid_argument("t coefficients differ: " + s);
    return SlopeFamily::t_family(Branch::t_upper, x, y1, z);
}

inline std::vector<CorpusRow> parse_corpus(std::string_view text) {
    std::vector<CorpusRow> rows;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        if (detail::trim(line).empty()) continue;
        const auto t1 = line.find('\t');
        const auto t2 = line.find('\t', t1 + 1);
        if (t1 == std::string::npos || t2 == std::string::npos) throw std::invalid_argument("corpus line needs 3 fields: " + line);
        CorpusRow row{parse_link(line.substr(0, t1)), std::nullopt, {}};
        const std::string name = line.substr(t1 + 1, t2 - t1 - 1);
        if (name != "-") row.rolfsen = name;
        std::string_view rest(line);
        rest.remove_prefix(t2 + 1);
        while (!rest.empty()) {
            const auto semi = rest.find("; ");
            row.families.push_back(parse_family(rest.substr(0, semi)));
            if (semi == std::string_view::npos) break;
            rest.remove_prefix(semi + 2);
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

inline std::string emit_corpus(const std::vector<CorpusRow>& rows) {
    std::string out;
    for (const auto& row : rows) {
        out += row.link.to_string() + "\t" + row.rolfsen.value_or("-") + "\t";
        for (std::size_t i = 0; i < row.families.size(); ++i) {
            if (i > 0) out += "; ";
            out += format_family(row.families[i]);
        }
        out += "\n";
    }
    return out;
}

inline const std::vector<CorpusRow>& builtin_rows() {
    static const std::vector<CorpusRow> rows = parse_corpus(builtin_corpus);
    return rows;
}

inline const CorpusRow* find_row(const std::vector<CorpusRow>& rows, const TwoBridgeLink& link) {
    for (const auto& row : rows) {
        if (row.link == link) return &row;
    }
    return nullptr;
}

// ---------------------------------------------------------------------------
// Verification

enum class RowStatus { match, mismatch, missing };

inline const char* to_string(RowStatus s) {
    switch (s) {
        case RowStatus::match: return "match";
        case RowStatus::mismatch: return "mismatch";
        case RowStatus::missing: return "missing";
    }
    return "?";
}

struct RowReport {
    TwoBridgeLink link;
    RowStatus status = RowStatus::match;
    std::vector<SlopeFamily> not_computed;  // in the table, not produced
    std::vector<SlopeFamily> not_tabled;    // produced, not in the table
};

struct TableReport {
    std::vector<RowReport> rows;

    std::size_t count(RowStatus s) const {
        return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [s](const RowReport& r) { return r.status == s; }));
    }
    std::size_t matched() const { return count(RowStatus::match); }
    std::size_t mismatched() const { return count(RowStatus::mismatch); }
    std::size_t missing() const { return count(RowStatus::missing); }
    bool all_match() const { return matched() == rows.size(); }

    std::string summary() const {
        std::string out = std::to_string(matched()) + "/" + std::to_string(rows.size()) + " match";
        if (mismatched() > 0) out += ", " + std::to_string(mismatched()) + " mismatch";
        if (missing() > 0) out += ", " + std::to_string(missing()) + " missing";
        return out;
    }
};

/// Diffs computed presentation families against a table row.
inline RowReport compare_row(const CorpusRow& row, std::span<const SlopeFamily> computed_families) {
    const std::vector<SlopeFamily> computed = presentation(computed_families);
    std::set<SlopeFamily> tabled(row.families.begin(), row.families.end());
    RowReport rep{row.link, RowStatus::match, {}, {}};
    std::set_difference(tabled.begin(), tabled.end(), computed.begin(), computed.end(), std::back_inserter(rep.not_computed));
    std::set_difference(computed.begin(), computed.end(), tabled.begin(), tabled.end(), std::back_inserter(rep.not_tabled));
    if (!rep.not_computed.empty() || !rep.not_tabled.empty()) rep.status = RowStatus::mismatch;
    return rep;
}

/// Every link through max_crossings against the table; links absent from
/// the table are reported as missing.
inline TableReport verify_corpus(Int max_crossings, const std::vector<CorpusRow>& corpus = builtin_rows()) {
    TableReport report;
    for (const TwoBridgeLink& link : enumerate_links(max_crossings, true)) {
        const CorpusRow* row = find_row(corpus, link);
        if (row == nullptr) {
            report.rows.push_back({link, RowStatus::missing, {}, {}});
            continue;
        }
        report.rows.push_back(compare_row(*row, slope_families(link)));
    }
    return report;
}

// ---------------------------------------------------------------------------
// The (4k-1)/8k family

inline TwoBridgeLink surgery_family_link(Int k) {
    if (k < 1) throw std::invalid_argument("k must be at least 1");
    return make_link(4 * k - 1, 8 * k);
}

inline std::vector<SlopeFamily> family_table_for_surgery_family(Int k) {
    return slope_families(surgery_family_link(k));
}

struct PathFormRow {
    std::string path;
    MForm raw;
};

/// Raw (x, y, z) for the six minimal Dt paths of (4k-1)/8k; the fourth is
/// absent for k = 1.
inline std::vector<PathFormRow> surgery_family_mforms(Int k) {
    std::vector<PathFormRow> rows{{"gamma1", {1, 2, 1}}, {"gamma2", {1, 0, 1}}, {"gamma3", {1, 0, 1}}};
    if (k > 1) rows.push_back({"gamma4", {1, -2, 1}});
    rows.push_back({"gamma5", {1, -2, 3 - 4 * k}});
    rows.push_back({"gamma6", {1 - 4 * k, 0, -1}});
    return rows;
}

/// Raw s-form of the single D1 path with C edges.
inline SForm surgery_family_sform(Int k) { return {-2 * k, 2 * k - 1}; }

/// Expected full family set for (4k-1)/8k in the preferred basis.
inline std::vector<SlopeFamily> surgery_family_expected(Int k) {
    std::set<SlopeFamily> out{
        SlopeFamily::t_family(Branch::t_full, 0, 0, 0),
        SlopeFamily::endpoint(0, Phi::second),
        SlopeFamily::endpoint(0, Phi::first),
        SlopeFamily::endpoint(-4 * k, Phi::second),
        SlopeFamily::endpoint(-4 * k, Phi::first),
        SlopeFamily::t_family(Branch::t_upper, -4 * k, 0, -2),
        SlopeFamily::t_family(Branch::t_lower, -2, 0, -4 * k),
        SlopeFamily::t_family(Branch::t_full, 0, 2, 0),
        SlopeFamily::t_family(Branch::t_lower, 2 - 4 * k, -2, 0),
        SlopeFamily::t_family(Branch::t_upper, 0, -2, 2 - 4 * k),
        SlopeFamily::s_family(-1 - 2 * k, 2 * k - 1),
    };
    if (k > 1) out.insert(SlopeFamily::t_family(Branch::t_full, 0, -2, 0));
    return {out.begin(), out.end()};
}

// ---------------------------------------------------------------------------
// Serialization

enum class Format { json, csv, tex, text };

inline Format parse_format(std::string_view s) {
    if (s == "json") return Format::json;
    if (s == "csv") return Format::csv;
    if (s == "tex") return Format::tex;
    if (s == "text") return Format::text;
    throw std::invalid_argument("unknown format '" + std::string(s) + "'");
}

namespace detail {

inline const char* json_branch(Branch b) {
    switch (b) {
        case Branch::s: return "S";
        case Branch::endpoint: return "endpoint";
        default: return "T";
    }
}

inline nlohmann::ordered_json family_json(const SlopeFamily& f) {
    nlohmann::ordered_json j;
    j["branch"] = json_branch(f.branch);
    j["kind"] = to_string(f.branch);
    if (f.is_t()) {
        j["coeffs"] = {f.x, f.y, f.z};
    } else if (f.branch == Branch::s) {
        j["coeffs"] = {f.x, f.y};
    } else {
        j["coeffs"] = {f.x};
    }
    j["domain"] = {f.lo.to_string(), f.hi.to_string()};
    j["phi"] = to_string(f.phi);
    j["text"] = format_family(f);
    return j;
}

inline std::string tex_term(Int c, Int coef, const std::string& var, bool spaced) {
    std::string out;
    if (c != 0) out = std::to_string(c);
    if (coef != 0) {
        const std::string gap = spaced ? " " : "";
        if (c != 0) out += gap + (coef < 0 ? "-" : "+") + gap;
        else if (coef < 0) out += "-";
        if (coef != 1 && coef != -1) out += std::to_string(coef < 0 ? -coef : coef) + gap;
        out += var;
    }
    return out.empty() ? std::string("0") : out;
}

inline std::string tex_family(const SlopeFamily& f) {
    if (f.branch == Branch::s) {
        return "(" + tex_term(f.x, f.y, "s", true) + "," + tex_term(f.x, -f.y, "s", true) + ")";
    }
    return "(" + tex_term(f.x, f.y, "t^{-1}", false) + "," + tex_term(f.z, f.y, "t", true) + ")";
}

inline std::string tex_name(const std::string& name) {
    const auto us = name.rfind('_');
    if (us == std::string::npos) return name;
    return name.substr(0, us) + "_{" + name.substr(us + 1) + "}";
}

}  // namespace detail

/// Serializes slope results. JSON and CSV carry every family; TeX and text
/// show the tables' view (1 < t < 1/0 and s).
inline std::string emit(std::span<const SlopeResult> results, Format format) {
    std::ostringstream out;
    switch (format) {
        case Format::json: {
            nlohmann::ordered_json doc = nlohmann::ordered_json::array();
            for (const auto& r : results) {
                nlohmann::ordered_json j;
                j["p"] = r.link.p();
                j["q"] = r.link.q();
                const auto name = rolfsen_name(r.link);
                j["rolfsen"] = name ? nlohmann::ordered_json(*name) : nlohmann::ordered_json(nullptr);
                j["linking_number"] = r.linking_number;
                j["families"] = nlohmann::ordered_json::array();
                for (const auto& f : r.families) j["families"].push_back(detail::family_json(f));
                j["presentation"] = nlohmann::ordered_json::array();
                for (const auto& f : presentation(r.families)) j["presentation"].push_back(detail::family_json(f));
                doc.push_back(std::move(j));
            }
            out << doc.dump(2) << "\n";
            break;
        }
        case Format::csv: {
            out << "p,q,branch,X,Y,Z,domain_lo,domain_hi,phi\n";
            for (const auto& r : results) {
                for (const auto& f : r.families) {
                    out << r.link.p() << "," << r.link.q() << "," << to_string(f.branch) << "," << f.x << ",";
                    out << (f.branch == Branch::endpoint ? "_" : std::to_string(f.y)) << ",";
                    out << (f.is_t() ? std::to_string(f.z) : "_") << ",";
                    out << f.lo << "," << f.hi << "," << to_string(f.phi) << "\n";
                }
            }
            break;
        }
        case Format::tex: {
            out << "$\\begin{array}{|c|r|llll|}\n\\hline\n\\mbox{link}&p/q&\\mbox{boundary slopes}&&&\\\\\n\\hline\n\\hline\n";
            Int last_crossings = -1;
            for (const auto& r : results) {
                const Int c = crossing_number(r.link);
                if (last_crossings >= 0 && c != last_crossings) out << "\\hline\n";
                last_crossings = c;
                const auto fams = presentation(r.families);
                const auto name = rolfsen_name(r.link);
                out << (name ? detail::tex_name(*name) : "") << "&" << r.link.to_string();
                std::size_t i = 0;
                do {
                    if (i > 0) out << "&";
                    for (std::size_t col = 0; col < 4; ++col, ++i) {
                        out << "&";
                        if (i < fams.size()) out << detail::tex_family(fams[i]);
                    }
                    out << "\\\\\n";
                } while (i < fams.size());
            }
            out << "\\hline \\end{array}$\n";
            break;
        }
        case Format::text: {
            for (const auto& r : results) {
                out << r.link.to_string() << ":";
                const auto fams = presentation(r.families);
                for (std::size_t i = 0; i < fams.size(); ++i) out << (i == 0 ? " " : "; ") << format_family(fams[i]);
                out << "\n";
            }
            break;
        }
    }
    return out.str();
}

}  // namespace twobridge
