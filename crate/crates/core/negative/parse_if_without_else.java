class M { public static void main(String[] a) { if (true) System.out.println(1); } }
