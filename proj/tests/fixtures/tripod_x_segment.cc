{"vertices": ["(o,a)","(o,b)","(p,a)","(p,b)","(q,a)","(q,b)","(r,a)","(r,b)"],
 "cubes": [
  {"dim": 1, "verts": ["(o,a)","(o,b)"]},
  {"dim": 1, "verts": ["(p,a)","(p,b)"]},
  {"dim": 1, "verts": ["(q,a)","(q,b)"]},
  {"dim": 1, "verts": ["(r,a)","(r,b)"]},
  {"dim": 1, "verts": ["(o,a)","(p,a)"]},
  {"dim": 1, "verts": ["(o,b)","(p,b)"]},
  {"dim": 2, "verts": ["(o,a)","(p,a)","(o,b)","(p,b)"]},
  {"dim": 1, "verts": ["(o,a)","(q,a)"]},
  {"dim": 1, "verts": ["(o,b)","(q,b)"]},
  {"dim": 2, "verts": ["(o,a)","(q,a)","(o,b)","(q,b)"]},
  {"dim": 1, "verts": ["(o,a)","(r,a)"]},
  {"dim": 1, "verts": ["(o,b)","(r,b)"]},
  {"dim": 2, "verts": ["(o,a)","(r,a)","(o,b)","(r,b)"]}
 ]}
