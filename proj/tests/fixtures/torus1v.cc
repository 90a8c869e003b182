{"vertices": ["v"],
 "cubes": [
  {"dim": 1, "verts": ["v","v"]},
  {"dim": 1, "verts": ["v","v"]},
  {"dim": 2, "verts": ["v","v","v","v"], "faces": [1,1,0,0]}
 ]}
