frame F
points a b
step g1 over F = TOP | 0 {a} | 1 BOT
step g2 over F = TOP | 0 {a} | 3/2 BOT
step one over F = TOP | 1 BOT
truncseq G = g1 g2 then stable
truncseq Swapped = g2 g1 then stable
truncseq Ramp = one then ramp one
