class M { public static void main(String[] a) { System.out.println(new A().f()); } }
class A extends B { public int f() { return 1; } }
class B extends A { }
