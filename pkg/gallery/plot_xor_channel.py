"""
The XOR channel
===============

Two fair bits and their exclusive or. Any two of the three variables are
independent, yet the three together are fully determined, which is the
textbook case where co-information goes negative.
"""
import numpy as np

from entropy_triangle import (
    Partition,
    build_joint,
    channel_balance,
    co_information,
    dual_total_correlation,
    normalize_aggregate,
    normalize_split,
    split_balance,
    total_correlation,
)

rows = np.array([[a, b, a ^ b] for a in (0, 1) for b in (0, 1)])
J = build_joint(rows, (2, 2, 2), variables=("x1", "x2", "xor"))

print("total correlation C      ", total_correlation(J))
print("dual total correlation D ", dual_total_correlation(J))
print("co-information           ", co_information(J))

# Split the inputs from the output and look at the channel.
part = Partition(["x1", "x2"], ["xor"])
d = channel_balance(J, part)
print(d)
print("aggregate point", normalize_aggregate(d).as_tuple())

# The inputs keep one private bit, the output none: the Y point sits at the apex.
for s in split_balance(J, part):
    print(s.side, normalize_split(s).as_tuple())
