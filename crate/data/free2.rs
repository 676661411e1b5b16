# Free group of rank 2: free reduction only.
[generators]
a A b B
[inverses]
a A
b B
[rules]
a A ->
A a ->
b B ->
B b ->
