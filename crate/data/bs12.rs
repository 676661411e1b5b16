# Baumslag-Solitar group BS(1,2) = < a, t | t a T = a a >.
[generators]
a A t T
[inverses]
a A
t T
[rules]
a A ->
A a ->
t T ->
T t ->
a a t -> t a
a T -> T a a
A T -> T A A
A t -> a t A
