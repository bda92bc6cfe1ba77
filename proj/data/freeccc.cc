# A generator into an exponential; its eta-expansion normalizes back to the
# same normal form as the generator itself.
ccsig FC
sorts X Y Z
gen h : X -> Z ^ Y
term eta = curry(ev[Y, Z] . <h . p1, p2>)
