# %% [markdown]
# # Three pins
#
# Three pins between two plates pull a soap film into a star whose arms meet at 120 degrees.
# Here we compute that junction directly and compare it with a brute-force minimiser.

# %%
import math

import numpy as np
from scipy.optimize import minimize

from soapsteiner import Triangle, fermat_point, stem_elevation, steiner_3_length
from soapsteiner.geometry import fermat_xy, vertex_angle

a, b, c = (0.0, 0.0), (4.0, 0.0), (1.0, 3.0)
junction, corner = fermat_xy(a, b, c)
length = sum(math.dist(junction, p) for p in (a, b, c))
print("junction", junction, "length", length, "corner", corner)

# %% [markdown]
# The closed form only needs two sides and the angle between them.

# %%
l, lp = math.dist(a, b), math.dist(a, c)
angle = vertex_angle(a, b, c)
print("from two sides:", steiner_3_length(l, lp, angle))
print("stem elevation (deg):", math.degrees(stem_elevation(l, lp, angle)))

# %% [markdown]
# A direct minimisation of the summed distances lands on the same point.

# %%
pts = np.array([a, b, c])
res = minimize(lambda x: np.hypot(*(pts - x).T).sum(), pts.mean(axis=0), method="Nelder-Mead",
               options={"xatol": 1e-12, "fatol": 1e-14})
print("numeric:", res.x, res.fun, "gap", math.dist(res.x, junction))

# %%
for u, v in ((a, b), (b, c), (a, c)):
    print(f"{math.degrees(vertex_angle(junction, u, v)):.9f}")

# %% [markdown]
# Once one corner opens to 120 degrees or more, the junction sits on that corner and the film is just two edges.

# %%
wide = ((0.0, 0.0), (1.0, 0.0), (-0.9, 0.3))
print(fermat_point(Triangle(*wide)))
