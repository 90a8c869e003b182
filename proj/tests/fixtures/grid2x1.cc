{"vertices": ["v0_0","v1_0","v2_0","v0_1","v1_1","v2_1"],
 "cubes": [
  {"dim": 2, "verts": ["v0_0","v1_0","v0_1","v1_1"]},
  {"dim": 2, "verts": ["v1_0","v2_0","v1_1","v2_1"]},
  {"dim": 1, "verts": ["v0_0","v0_1"]},
  {"dim": 1, "verts": ["v1_0","v1_1"]},
  {"dim": 1, "verts": ["v0_0","v1_0"]},
  {"dim": 1, "verts": ["v0_1","v1_1"]},
  {"dim": 1, "verts": ["v2_0","v2_1"]},
  {"dim": 1, "verts": ["v1_0","v2_0"]},
  {"dim": 1, "verts": ["v1_1","v2_1"]}
 ]}
