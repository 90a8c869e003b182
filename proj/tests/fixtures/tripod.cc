{"vertices": ["o","p","q","r"],
 "cubes": [
  {"dim": 1, "verts": ["o","p"]},
  {"dim": 1, "verts": ["o","q"]},
  {"dim": 1, "verts": ["o","r"]}
 ]}
